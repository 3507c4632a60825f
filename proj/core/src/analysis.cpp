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
#include "deg/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include <cstdio>
#include <limits>

namespace deg {

KnnRow brute_force_knn(const FeatureStore& store, std::span<const float> query, std::uint32_t k,
                       std::optional<VertexId> exclude, std::size_t rows) {
  if (query.size() != store.dim()) throw Error(ErrorCode::DimensionMismatch, "query dimension");
  const std::size_t n = rows == 0 ? store.size() : std::min(rows, store.size());
  const std::size_t available = n - ((exclude && *exclude < n) ? 1 : 0);
  if (k > available) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds " + std::to_string(available));
  }
  KnnRow all;
  all.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (exclude && v == *exclude) continue;
    all.push_back({v, store.distance_unchecked(query.data(), v)});
  }
  if (k < all.size()) {
    std::nth_element(all.begin(), all.begin() + k, all.end(), closer);
    all.resize(k);
  }
  std::sort(all.begin(), all.end(), closer);
  return all;
}

GroundTruth compute_ground_truth(const FeatureStore& base, const FeatureStore& queries, std::uint32_t k) {
  if (base.dim() != queries.dim()) throw Error(ErrorCode::DimensionMismatch, "base and query dimensions differ");
  GroundTruth truth;
  truth.reserve(queries.size());
  for (VertexId q = 0; q < queries.size(); ++q) truth.push_back(brute_force_knn(base, queries.row(q), k));
  return truth;
}

double recall_at_k(std::span<const VertexId> result, std::span<const ScoredId> truth, std::uint32_t k) {
  if (k == 0) return 0.0;
  if (truth.size() < k) throw Error(ErrorCode::KTooLarge, "truth row shorter than k");
  std::size_t hits = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (std::find(result.begin(), result.end(), truth[i].id) != result.end()) ++hits;
  }
  return double(hits) / double(k);
}

double recall_at_k(const std::vector<std::vector<VertexId>>& results, const GroundTruth& truth, std::uint32_t k) {
  if (results.size() != truth.size()) throw Error(ErrorCode::InvalidArgument, "result and truth counts differ");
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t q = 0; q < results.size(); ++q) sum += recall_at_k(results[q], truth[q], k);
  return sum / double(results.size());
}

std::vector<std::vector<VertexId>> exact_knn_lists(const DegGraph& graph, std::uint32_t k) {
  std::vector<std::vector<VertexId>> out(graph.size());
  for (VertexId v = 0; v < graph.size(); ++v) {
    const KnnRow row = brute_force_knn(graph.features(), graph.feature(v), k, v, graph.size());
    out[v].reserve(row.size());
    for (const auto& e : row) out[v].push_back(e.id);
  }
  return out;
}

namespace {

double vertex_quality(std::span<const VertexId> neighbors, const std::vector<VertexId>& knn) {
  if (neighbors.empty()) return 0.0;
  const std::size_t limit = std::min(neighbors.size(), knn.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    if (std::find(neighbors.begin(), neighbors.end(), knn[i]) != neighbors.end()) ++hits;
  }
  return double(hits) / double(neighbors.size());
}

std::vector<std::vector<VertexId>> out_lists(const DegGraph& graph) {
  std::vector<std::vector<VertexId>> out(graph.size());
  for (VertexId v = 0; v < graph.size(); ++v) {
    const auto ids = graph.neighbor_ids(v);
    out[v].assign(ids.begin(), ids.end());
  }
  return out;
}

}  // namespace

double graph_quality(const DegGraph& graph, const std::vector<std::vector<VertexId>>& knn) {
  if (graph.empty()) return 0.0;
  if (knn.size() != graph.size()) throw Error(ErrorCode::InvalidArgument, "one knn list per vertex required");
  double sum = 0.0;
  for (VertexId v = 0; v < graph.size(); ++v) sum += vertex_quality(graph.neighbor_ids(v), knn[v]);
  return sum / double(graph.size());
}

double graph_quality(const DegGraph& graph) {
  return graph_quality(graph, exact_knn_lists(graph, graph.edges_per_vertex()));
}

double average_neighbor_distance(const DegGraph& graph, std::span<const VertexId> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "average neighbor distance of no vertices");
  const double d = graph.edges_per_vertex();
  double sum = 0.0;
  for (VertexId u : subset) {
    double local = 0.0;
    for (float w : graph.neighbor_weights(u)) local += w;
    sum += local / d;
  }
  return sum / double(subset.size());
}

double average_neighbor_distance(const DegGraph& graph) {
  std::vector<VertexId> all(graph.size());
  std::iota(all.begin(), all.end(), VertexId{0});
  return average_neighbor_distance(graph, all);
}

double total_edge_weight(const DegGraph& graph) {
  double sum = 0.0;
  for (VertexId v = 0; v < graph.size(); ++v) {
    const auto ids = graph.neighbor_ids(v);
    const auto weights = graph.neighbor_weights(v);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (v < ids[i]) sum += weights[i];
    }
  }
  return sum;
}

std::size_t reachable_count(const std::vector<std::vector<VertexId>>& out_edges, VertexId start) {
  if (start >= out_edges.size()) return 0;
  std::vector<char> seen(out_edges.size(), 0);
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId n : out_edges[v]) {
      if (!seen[n]) {
        seen[n] = 1;
        ++count;
        stack.push_back(n);
      }
    }
  }
  return count;
}

GraphStats graph_stats(const std::vector<std::vector<VertexId>>& out_edges, VertexId search_seed,
                       const std::vector<std::vector<VertexId>>* knn, const StatsOptions& options) {
  GraphStats stats;
  const std::size_t n = out_edges.size();
  stats.vertices = n;
  if (n == 0) return stats;

  std::vector<std::uint32_t> in_degree(n, 0);
  std::size_t out_total = 0;
  stats.min_out_degree = std::numeric_limits<std::uint32_t>::max();
  for (const auto& list : out_edges) {
    const auto deg = static_cast<std::uint32_t>(list.size());
    stats.min_out_degree = std::min(stats.min_out_degree, deg);
    stats.max_out_degree = std::max(stats.max_out_degree, deg);
    out_total += deg;
    for (VertexId t : list) ++in_degree[t];
  }
  stats.avg_out_degree = double(out_total) / double(n);
  const auto [min_in, max_in] = std::minmax_element(in_degree.begin(), in_degree.end());
  stats.min_in_degree = *min_in;
  stats.max_in_degree = *max_in;
  stats.source_count = std::size_t(std::count(in_degree.begin(), in_degree.end(), 0u));

  stats.search_reach = double(reachable_count(out_edges, search_seed)) / double(n);

  std::vector<VertexId> sources(n);
  std::iota(sources.begin(), sources.end(), VertexId{0});
  if (n > options.explore_exact_limit) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(std::min(options.explore_samples, n));
    stats.explore_reach_sampled = true;
  }
  double reach = 0.0;
  for (VertexId s : sources) reach += double(reachable_count(out_edges, s)) / double(n);
  stats.explore_reach = reach / double(sources.size());

  if (knn) {
    if (knn->size() != n) throw Error(ErrorCode::InvalidArgument, "one knn list per vertex required");
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) sum += vertex_quality(out_edges[v], (*knn)[v]);
    stats.graph_quality = sum / double(n);
  }
  return stats;
}

GraphStats graph_stats(const DegGraph& graph, const StatsOptions& options) {
  if (graph.empty()) return {};
  const auto out_edges = out_lists(graph);
  GraphStats stats = graph_stats(out_edges, median_seed(graph), nullptr, options);
  if (!options.compute_quality) return stats;

  const std::uint32_t k = std::min<std::uint32_t>(graph.edges_per_vertex(), std::uint32_t(graph.size() - 1));
  std::vector<VertexId> sample(graph.size());
  std::iota(sample.begin(), sample.end(), VertexId{0});
  if (graph.size() > options.quality_exact_limit) {
    std::mt19937_64 rng(options.seed + 1);
    std::shuffle(sample.begin(), sample.end(), rng);
    sample.resize(std::min(options.quality_samples, sample.size()));
    stats.quality_sampled = true;
  }
  double sum = 0.0;
  for (VertexId v : sample) {
    const KnnRow row = brute_force_knn(graph.features(), graph.feature(v), k, v, graph.size());
    std::vector<VertexId> ids;
    ids.reserve(row.size());
    for (const auto& e : row) ids.push_back(e.id);
    sum += vertex_quality(graph.neighbor_ids(v), ids);
  }
  stats.graph_quality = sum / double(sample.size());
  return stats;
}

void write_stats_table(std::ostream& out, const GraphStats& s, std::string_view name) {
  char line[512];
  out << "graph,vertices,gq,avg_out,min_out,max_out,min_in,max_in,sources,search_reach_pct,explore_reach_pct\n";
  std::snprintf(line, sizeof(line), "%.*s,%zu,%.4f,%.2f,%u,%u,%u,%u,%zu,%.2f,%.2f\n", int(name.size()), name.data(),
                s.vertices, s.graph_quality, s.avg_out_degree, s.min_out_degree, s.max_out_degree, s.min_in_degree,
                s.max_in_degree, s.source_count, s.search_reach * 100.0, s.explore_reach * 100.0);
  out << line;
}

std::size_t cut_set_size(const DegGraph& graph, std::span<const VertexId> subset) {
  const std::size_t n = graph.size();
  if (subset.empty()) throw Error(ErrorCode::DegenerateSubset, "empty subset");
  std::vector<char> member(n, 0);
  for (VertexId v : subset) {
    if (v >= n) throw Error(ErrorCode::DegenerateSubset, "unknown vertex " + std::to_string(v));
    if (member[v]) throw Error(ErrorCode::DegenerateSubset, "duplicate vertex " + std::to_string(v));
    member[v] = 1;
  }
  if (subset.size() == n) throw Error(ErrorCode::DegenerateSubset, "subset covers every vertex");

  std::size_t endpoints = 0;
  std::size_t induced_twice = 0;
  for (VertexId v : subset) {
    const auto ids = graph.neighbor_ids(v);
    endpoints += ids.size();
    for (VertexId u : ids) induced_twice += member[u];
  }
  return endpoints - induced_twice;
}

CutBoundReport verify_cut_bound(const DegGraph& graph, std::size_t max_subsets) {
  const std::size_t n = graph.size();
  const std::size_t d = graph.edges_per_vertex();
  const std::size_t max_size = std::min(d, n == 0 ? 0 : n - 1);

  // Guard the enumeration size before starting.
  double total = 0.0, binom = 1.0;
  for (std::size_t s = 1; s <= max_size; ++s) {
    binom = binom * double(n - s + 1) / double(s);
    total += binom;
  }
  if (total > double(max_subsets)) {
    throw Error(ErrorCode::TooLargeToEnumerate, std::to_string(static_cast<long double>(total)) + " subsets");
  }

  CutBoundReport report;
  std::vector<VertexId> subset;
  for (std::size_t s = 1; s <= max_size; ++s) {
    subset.resize(s);
    std::iota(subset.begin(), subset.end(), VertexId{0});
    const long long bound = static_cast<long long>(s * (d + 1)) - static_cast<long long>(s * s);
    while (true) {
      const auto cut = static_cast<long long>(cut_set_size(graph, subset));
      ++report.subsets_checked;
      if (cut < bound || cut < static_cast<long long>(d)) {
        ++report.violations;
        if (report.violating_subsets.size() < 8) report.violating_subsets.push_back(subset);
      }
      // Next combination in lexicographic order.
      std::size_t i = s;
      while (i > 0 && subset[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < s; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return report;
}

SettledReport verify_settled(const DegGraph& graph) {
  SettledReport report;
  const std::size_t n = graph.size();
  const std::uint32_t d = graph.edges_per_vertex();
  auto problem = [&](std::string text) {
    if (report.problems.size() < 16) report.problems.push_back(std::move(text));
  };

  for (VertexId v = 0; v < n; ++v) {
    const auto ids = graph.neighbor_ids(v);
    if (ids.size() != d) {
      report.regular = false;
      problem("vertex " + std::to_string(v) + " has degree " + std::to_string(ids.size()));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const VertexId u = ids[i];
      if (u == v || (i > 0 && ids[i - 1] >= u)) {
        report.simple = false;
        problem("vertex " + std::to_string(v) + " has a loop, duplicate or unsorted neighbor list");
      }
      if (u >= n) {
        report.symmetric = false;
        continue;
      }
      const auto back = graph.neighbor_ids(u);
      const auto it = std::lower_bound(back.begin(), back.end(), v);
      if (it == back.end() || *it != v) {
        report.symmetric = false;
        problem("edge (" + std::to_string(v) + "," + std::to_string(u) + ") has no reverse");
        continue;
      }
      if (graph.has_weights()) {
        const float w = graph.neighbor_weights(v)[i];
        const float back_w = graph.neighbor_weights(u)[std::size_t(it - back.begin())];
        if (w != back_w) {
          report.symmetric = false;
          problem("edge (" + std::to_string(v) + "," + std::to_string(u) + ") has asymmetric weights");
        }
        if (w != graph.distance(v, u)) {
          report.weights_fresh = false;
          problem("edge (" + std::to_string(v) + "," + std::to_string(u) + ") has a stale weight");
        }
      }
    }
  }
  if (n == 0) return report;

  // Connectivity and bridges with an iterative lowlink DFS. The undirected
  // view uses each stored half-edge, so asymmetric graphs are still handled.
  std::vector<std::uint32_t> order(n, 0), low(n, 0);
  std::vector<VertexId> parent(n, VertexId(-1));
  std::vector<std::uint32_t> cursor(n, 0);
  std::uint32_t timer = 0;
  std::size_t components = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (order[root] != 0) continue;
    ++components;
    std::vector<VertexId> stack{root};
    order[root] = low[root] = ++timer;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      const auto ids = graph.neighbor_ids(v);
      if (cursor[v] < ids.size()) {
        const VertexId u = ids[cursor[v]++];
        if (u >= n) continue;
        if (order[u] == 0) {
          parent[u] = v;
          order[u] = low[u] = ++timer;
          stack.push_back(u);
        } else if (u != parent[v]) {
          low[v] = std::min(low[v], order[u]);
        }
      } else {
        stack.pop_back();
        if (parent[v] != VertexId(-1)) {
          const VertexId p = parent[v];
          low[p] = std::min(low[p], low[v]);
          if (low[v] > order[p]) {
            report.bridgeless = false;
            problem("bridge (" + std::to_string(p) + "," + std::to_string(v) + ")");
          }
        }
      }
    }
  }
  if (components != 1) {
    report.connected = false;
    problem(std::to_string(components) + " connected components");
  }
  return report;
}

}  // namespace deg
