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
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "deg/analysis.hpp"
#include "deg/graph.hpp"
#include "deg/metric.hpp"

namespace deg {

/// Dense row-major int32 matrix as stored in .ivecs files.
struct IntMatrix {
  std::uint32_t cols = 0;
  std::vector<std::int32_t> values;

  std::size_t rows() const noexcept { return cols == 0 ? 0 : values.size() / cols; }
  std::span<const std::int32_t> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
};

/// Each record is a little-endian int32 dimension followed by that many
/// 4-byte values. `limit` keeps only the first rows.
FeatureStore read_fvecs(const std::filesystem::path& path, Metric metric = Metric::SquaredEuclidean,
                        std::optional<std::size_t> limit = std::nullopt);
FeatureStore parse_fvecs(std::span<const std::byte> bytes, Metric metric = Metric::SquaredEuclidean,
                         std::optional<std::size_t> limit = std::nullopt);
void write_fvecs(const std::filesystem::path& path, const FeatureStore& store);

IntMatrix read_ivecs(const std::filesystem::path& path, std::optional<std::size_t> limit = std::nullopt);
IntMatrix parse_ivecs(std::span<const std::byte> bytes, std::optional<std::size_t> limit = std::nullopt);
void write_ivecs(const std::filesystem::path& path, const IntMatrix& matrix);

IntMatrix to_ivecs(const GroundTruth& truth);
/// Ground truth ids from an ivecs matrix; distances are recomputed.
GroundTruth ground_truth_from_ivecs(const IntMatrix& ids, const FeatureStore& base, const FeatureStore& queries);

// Graph file layout, all little-endian:
//   "DEG1" | version u32 | metric u8 | dim u32 | vertices u64 | degree u32 | weights u8
// then per vertex: dim f32 features, degree u32 neighbor ids (ascending) and,
// when the weights flag is set, degree f32 weights.
inline constexpr std::uint32_t kGraphFormatVersion = 1;
inline constexpr std::size_t kGraphHeaderBytes = 26;

std::uint64_t graph_file_size(std::uint64_t vertices, std::uint32_t dim, std::uint32_t degree, bool weights);

enum class LoadMode {
  Full,
  /// Drop weights even if the file has them; the result is search-only.
  SearchOnly,
};

/// Requires every vertex to hold exactly d neighbors.
void save_graph(const DegGraph& graph, const std::filesystem::path& path, bool include_weights = true);
std::vector<std::byte> serialize_graph(const DegGraph& graph, bool include_weights = true);

DegGraph load_graph(const std::filesystem::path& path, LoadMode mode = LoadMode::Full);
DegGraph parse_graph(std::span<const std::byte> bytes, LoadMode mode = LoadMode::Full);

std::vector<std::byte> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes);

struct Subsample {
  FeatureStore store;
  /// Row i of `store` is row ids[i] of the source.
  std::vector<VertexId> ids;
};

/// Uniform sample without replacement, in draw order. Deterministic per seed.
Subsample subsample(const FeatureStore& store, std::size_t n, std::uint64_t seed);

}  // namespace deg
