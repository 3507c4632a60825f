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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deg/graph.hpp"
#include "deg/search.hpp"

namespace deg {

/// True nearest neighbors of one query, ascending by (distance, id).
using KnnRow = std::vector<ScoredId>;
using GroundTruth = std::vector<KnnRow>;

/// Exact top-k over the first `rows` vectors of `store` (all rows when 0),
/// optionally skipping one id. Throws KTooLarge if fewer than k candidates.
KnnRow brute_force_knn(const FeatureStore& store, std::span<const float> query, std::uint32_t k,
                       std::optional<VertexId> exclude = std::nullopt, std::size_t rows = 0);

GroundTruth compute_ground_truth(const FeatureStore& base, const FeatureStore& queries, std::uint32_t k);

/// Fraction of the first k truth ids present in `result`.
double recall_at_k(std::span<const VertexId> result, std::span<const ScoredId> truth, std::uint32_t k);
/// Mean recall over all queries.
double recall_at_k(const std::vector<std::vector<VertexId>>& results, const GroundTruth& truth, std::uint32_t k);

/// For every vertex of the graph, the ids of its k nearest other vertices.
std::vector<std::vector<VertexId>> exact_knn_lists(const DegGraph& graph, std::uint32_t k);

/// Mean over vertices of |N(v) ∩ KNN(v)| / |N(v)|, where KNN(v) is cut to
/// |N(v)| entries.
double graph_quality(const DegGraph& graph, const std::vector<std::vector<VertexId>>& knn);
double graph_quality(const DegGraph& graph);

/// Mean over `subset` of the mean stored edge weight per vertex, divided by
/// the regularity d.
double average_neighbor_distance(const DegGraph& graph, std::span<const VertexId> subset);
double average_neighbor_distance(const DegGraph& graph);

/// Total stored edge weight, each undirected edge counted once.
double total_edge_weight(const DegGraph& graph);

struct GraphStats {
  std::size_t vertices = 0;
  double graph_quality = 0.0;
  double avg_out_degree = 0.0;
  std::uint32_t min_out_degree = 0;
  std::uint32_t max_out_degree = 0;
  std::uint32_t min_in_degree = 0;
  std::uint32_t max_in_degree = 0;
  std::size_t source_count = 0;
  /// Fraction of vertices reachable from the search seed.
  double search_reach = 0.0;
  /// Mean fraction of vertices reachable from each vertex.
  double explore_reach = 0.0;
  bool explore_reach_sampled = false;
  bool quality_sampled = false;
};

struct StatsOptions {
  bool compute_quality = true;
  /// Exact graph quality up to this many vertices, sampled above.
  std::size_t quality_exact_limit = 20000;
  std::size_t quality_samples = 2000;
  /// Exact explore reach up to this many vertices, sampled above.
  std::size_t explore_exact_limit = 1000;
  std::size_t explore_samples = 100;
  std::uint64_t seed = 7;
};

GraphStats graph_stats(const DegGraph& graph, const StatsOptions& options = {});

/// Statistics of an arbitrary directed adjacency. `knn` may be null, in which
/// case graph quality is left at 0.
GraphStats graph_stats(const std::vector<std::vector<VertexId>>& out_edges, VertexId search_seed,
                       const std::vector<std::vector<VertexId>>* knn, const StatsOptions& options = {});

void write_stats_table(std::ostream& out, const GraphStats& stats, std::string_view name);

/// Number of edges with exactly one endpoint in `subset`, computed as the
/// endpoint total of the subset minus twice its induced edges.
std::size_t cut_set_size(const DegGraph& graph, std::span<const VertexId> subset);

struct CutBoundReport {
  std::size_t subsets_checked = 0;
  std::size_t violations = 0;
  std::vector<std::vector<VertexId>> violating_subsets;  // first few only

  bool ok() const noexcept { return violations == 0; }
};

/// Enumerate every subset S with 1 <= |S| <= d (and |S| < |V|) and check
/// cut(S) >= |S|(d + 1) - |S|^2 >= d. Throws TooLargeToEnumerate when the
/// subset count exceeds `max_subsets`.
CutBoundReport verify_cut_bound(const DegGraph& graph, std::size_t max_subsets = 20'000'000);

struct SettledReport {
  bool regular = true;
  bool symmetric = true;
  bool simple = true;
  bool weights_fresh = true;
  bool connected = true;
  bool bridgeless = true;
  std::vector<std::string> problems;

  bool ok() const noexcept { return regular && symmetric && simple && weights_fresh && connected && bridgeless; }
};

/// Regularity, symmetry, loop/duplicate freedom, weight freshness,
/// connectivity and absence of bridges.
SettledReport verify_settled(const DegGraph& graph);

/// Number of vertices reachable from `start` along directed edges.
std::size_t reachable_count(const std::vector<std::vector<VertexId>>& out_edges, VertexId start);

}  // namespace deg
