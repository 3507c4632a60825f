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
#include <limits>
#include <span>
#include <vector>

#include "deg/graph.hpp"

namespace deg {

struct ScoredId {
  VertexId id;
  float distance;

  bool operator==(const ScoredId&) const = default;
};

/// Strict ordering by distance, ties broken by the lower id.
inline bool closer(const ScoredId& a, const ScoredId& b) noexcept {
  return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

struct SearchParams {
  std::uint32_t k = 10;
  /// Range factor: candidates within r * (1 + eps) of the query stay in play.
  float eps = 0.1f;
  /// Stop once this many vertices have been checked; 0 means unlimited.
  std::size_t max_checked = 0;
};

struct SearchResult {
  /// At most k entries, ascending by (distance, id).
  std::vector<ScoredId> entries;
  /// Number of vertices whose distance to the query was evaluated.
  std::size_t checked_count = 0;
  /// Number of expanded candidates.
  std::size_t hop_count = 0;

  std::vector<VertexId> ids() const;
};

/// Epoch-stamped membership set over dense vertex ids.
class VisitedSet {
 public:
  void reset(std::size_t n);
  bool contains(VertexId v) const noexcept { return marks_[v] == epoch_; }
  /// Returns true if `v` was already present.
  bool test_and_set(VertexId v) noexcept {
    if (marks_[v] == epoch_) return true;
    marks_[v] = epoch_;
    return false;
  }

 private:
  std::vector<std::uint32_t> marks_;
  std::uint32_t epoch_ = 0;
};

/// Best-first range search starting from `seeds`.
///
/// Seeds are checked up front and form the initial result list; the radius r
/// starts unbounded and shrinks to the k-th result distance once the result
/// list overflows. Expansion stops when the closest open candidate lies
/// beyond r * (1 + eps).
///
/// Works on graphs with transiently missing edges, so construction and
/// optimization can search mid-operation.
SearchResult range_search(const DegGraph& graph, std::span<const VertexId> seeds, std::span<const float> query,
                          const SearchParams& params);

/// The vertex closest to the centroid of all vertex features (lowest id on
/// ties). Used as the fixed entry point for benchmark queries.
VertexId median_seed(const DegGraph& graph);

/// Budgeted best-first walk from `from` toward `targets`, ordered by the
/// distance to the nearest target. Returns false when the budget of checked
/// vertices runs out, so a false result only means "no path found".
bool path_exists(const DegGraph& graph, std::span<const VertexId> from, std::span<const VertexId> targets,
                 std::size_t budget);

}  // namespace deg
