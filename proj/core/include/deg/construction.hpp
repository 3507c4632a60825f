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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "deg/graph.hpp"
#include "deg/optimization.hpp"
#include "deg/search.hpp"

namespace deg {

/// Rule for picking the neighbor n of b whose edge (b, n) gets replaced by
/// (v, b) and (v, n) when vertex v is inserted.
enum class SelectionScheme : std::uint8_t {
  ClosestToNew,        // A: n closest to v
  ShortestEdge,        // B: shortest edge (b, n)
  LongestEdge,         // C: longest edge (b, n)
  LargestReduction,    // D: largest drop of total edge weight
};

char scheme_letter(SelectionScheme scheme) noexcept;
std::optional<SelectionScheme> parse_scheme(std::string_view letter) noexcept;

struct BuildParams {
  std::uint32_t degree = 30;
  std::uint32_t k_ext = 60;
  float eps_ext = 0.2f;
  OptimizeParams opt{};
  SelectionScheme scheme = SelectionScheme::LongestEdge;
  bool use_mrng = true;
  bool optimize_new_edges = true;

  /// Throws OddOrTinyDegree or InvalidArgument.
  void validate() const;

  static BuildParams sift() { return {}; }
  static BuildParams audio() { return {20, 40, 0.3f, {20, 0.001f, 5, GainMetric::Raw}}; }
  static BuildParams enron() { return {30, 60, 0.3f, {30, 0.001f, 5, GainMetric::Raw}}; }
  static BuildParams glove() { return {30, 30, 0.2f, {30, 0.001f, 5, GainMetric::Raw}}; }
};

/// False iff some common neighbor u of v1 and v2 lies inside their lune:
/// delta(v1, v2) > max(w(v1, u), w(v2, u)).
bool check_mrng(const DegGraph& graph, VertexId v1, VertexId v2);

/// check_mrng for a vertex that is not wired yet: `tentative` holds the
/// neighbors already chosen for it together with their distances, and
/// `distance_to_b` is its distance to b.
bool check_mrng_tentative(const DegGraph& graph, VertexId b, float distance_to_b,
                          std::span<const ScoredId> tentative);

/// Choose the neighbor n of b whose edge (b, n) is broken to make room for
/// the new vertex. Neighbors listed in `forbidden` are skipped. Ties go to the
/// lower id.
VertexId select_edge_to_break(const DegGraph& graph, VertexId b, std::span<const float> new_features,
                              std::span<const VertexId> forbidden, SelectionScheme scheme);

struct ExtendReport {
  std::uint32_t removed_edges = 0;
  std::uint32_t added_edges = 0;
  /// Neighbors accepted in the MRNG-checked phase.
  std::uint32_t mrng_neighbors = 0;
  std::uint32_t search_widenings = 0;
  std::uint32_t optimize_calls = 0;
  std::uint32_t optimize_commits = 0;
};

/// Wire the edgeless vertex `v` into a settled graph with at least d + 1
/// vertices, keeping it d-regular and connected.
ExtendReport extend_graph(DegGraph& graph, VertexId v, const BuildParams& params);

/// Called after the initial complete graph and after every insertion.
using BuildProgress = std::function<void(const DegGraph& graph, std::size_t total)>;

/// Build a graph over every row of `dataset` in row order: the first d + 1
/// rows form a complete graph, the rest are added with extend_graph.
DegGraph build(FeatureStore dataset, const BuildParams& params, const BuildProgress& progress = {});

/// Random connected simple d-regular graph over `dataset` with weights from
/// the metric. Deterministic for a given seed.
DegGraph make_random_regular_graph(FeatureStore dataset, std::uint32_t degree, std::uint64_t seed);

}  // namespace deg
