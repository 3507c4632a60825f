// Copyright 2026 The DEG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "deg/error.hpp"

namespace deg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OddOrTinyDegree: return "OddOrTinyDegree";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InconsistentLog: return "InconsistentLog";
    case ErrorCode::SearchOnlyGraph: return "SearchOnlyGraph";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySeeds: return "EmptySeeds";
    case ErrorCode::UnknownSeed: return "UnknownSeed";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NoEligibleNeighbor: return "NoEligibleNeighbor";
    case ErrorCode::GraphTooSmall: return "GraphTooSmall";
    case ErrorCode::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorCode::InfeasibleDegreeSequence: return "InfeasibleDegreeSequence";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::KTooLargeForDataset: return "KTooLargeForDataset";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::DegenerateSubset: return "DegenerateSubset";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CorruptHeader: return "CorruptHeader";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::NTooLarge: return "NTooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace deg
