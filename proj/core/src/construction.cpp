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
#include "deg/construction.hpp"

#include <algorithm>
#include <string>

namespace deg {

namespace {

bool contains(std::span<const ScoredId> list, VertexId id) {
  return std::any_of(list.begin(), list.end(), [id](const ScoredId& s) { return s.id == id; });
}

}  // namespace

char scheme_letter(SelectionScheme scheme) noexcept {
  switch (scheme) {
    case SelectionScheme::ClosestToNew: return 'A';
    case SelectionScheme::ShortestEdge: return 'B';
    case SelectionScheme::LongestEdge: return 'C';
    case SelectionScheme::LargestReduction: return 'D';
  }
  return '?';
}

std::optional<SelectionScheme> parse_scheme(std::string_view letter) noexcept {
  if (letter == "A" || letter == "a") return SelectionScheme::ClosestToNew;
  if (letter == "B" || letter == "b") return SelectionScheme::ShortestEdge;
  if (letter == "C" || letter == "c") return SelectionScheme::LongestEdge;
  if (letter == "D" || letter == "d") return SelectionScheme::LargestReduction;
  return std::nullopt;
}

void BuildParams::validate() const {
  DegGraph::validate_degree(degree);
  if (k_ext < degree) {
    throw Error(ErrorCode::InvalidArgument,
                "k_ext (" + std::to_string(k_ext) + ") must be at least the degree (" + std::to_string(degree) + ")");
  }
  if (!(eps_ext >= 0.0f) || !(opt.eps >= 0.0f)) throw Error(ErrorCode::InvalidArgument, "eps must be >= 0");
  if (opt.k == 0) throw Error(ErrorCode::InvalidArgument, "k_opt must be positive");
  if (opt.iterations == 0) throw Error(ErrorCode::InvalidArgument, "i_opt must be positive");
}

bool check_mrng(const DegGraph& graph, VertexId v1, VertexId v2) {
  const auto ids1 = graph.neighbor_ids(v1);
  const auto ids2 = graph.neighbor_ids(v2);
  const auto w1 = graph.neighbor_weights(v1);
  const auto w2 = graph.neighbor_weights(v2);
  const float dist = graph.features().distance(v1, v2);
  // Both lists are sorted by id, so a merge walk finds the common neighbors.
  std::size_t i = 0, j = 0;
  while (i < ids1.size() && j < ids2.size()) {
    if (ids1[i] < ids2[j]) {
      ++i;
    } else if (ids2[j] < ids1[i]) {
      ++j;
    } else {
      if (dist > std::max(w1[i], w2[j])) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

bool check_mrng_tentative(const DegGraph& graph, VertexId b, float distance_to_b,
                          std::span<const ScoredId> tentative) {
  for (const ScoredId& u : tentative) {
    if (u.id == b || !graph.has_edge(b, u.id)) continue;
    if (distance_to_b > std::max(u.distance, graph.edge_weight(b, u.id))) return false;
  }
  return true;
}

VertexId select_edge_to_break(const DegGraph& graph, VertexId b, std::span<const float> new_features,
                              std::span<const VertexId> forbidden, SelectionScheme scheme) {
  const FeatureStore& store = graph.features();
  const auto ids = graph.neighbor_ids(b);
  const auto weights = graph.neighbor_weights(b);
  const float to_b = (scheme == SelectionScheme::LargestReduction) ? store.distance(new_features, b) : 0.0f;

  bool found = false;
  VertexId best = 0;
  float best_score = 0.0f;
  // Every scheme is phrased as "minimize score"; ids ascend so the first
  // strict improvement wins ties for the lower id.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const VertexId n = ids[i];
    if (std::find(forbidden.begin(), forbidden.end(), n) != forbidden.end()) continue;
    float score = 0.0f;
    switch (scheme) {
      case SelectionScheme::ClosestToNew: score = store.distance(new_features, n); break;
      case SelectionScheme::ShortestEdge: score = weights[i]; break;
      case SelectionScheme::LongestEdge: score = -weights[i]; break;
      case SelectionScheme::LargestReduction:
        score = -(weights[i] - to_b - store.distance(new_features, n));
        break;
    }
    if (!found || score < best_score) {
      found = true;
      best = n;
      best_score = score;
    }
  }
  if (!found) throw Error(ErrorCode::NoEligibleNeighbor, "vertex " + std::to_string(b));
  return best;
}

ExtendReport extend_graph(DegGraph& graph, VertexId v, const BuildParams& params) {
  if (!graph.has_weights()) throw Error(ErrorCode::SearchOnlyGraph, "cannot extend a graph without weights");
  const std::uint32_t d = graph.edges_per_vertex();
  if (params.degree != d) throw Error(ErrorCode::InvalidArgument, "build params degree differs from the graph");
  if (graph.degree(v) != 0) throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " is wired");
  if (graph.size() < std::size_t(d) + 2) {
    throw Error(ErrorCode::GraphTooSmall, "need " + std::to_string(d + 1) + " settled vertices");
  }

  const FeatureStore& store = graph.features();
  const auto query = store.row(v);
  const VertexId seed = (v == 0) ? 1 : 0;
  ExtendReport report;

  SearchParams search{params.k_ext, params.eps_ext, 0};
  SearchResult candidates = range_search(graph, std::span(&seed, 1), query, search);

  std::vector<ScoredId> chosen;
  chosen.reserve(d);
  std::vector<VertexId> forbidden;
  forbidden.reserve(d + 1);
  forbidden.push_back(v);

  bool skip_mrng = !params.use_mrng;
  while (chosen.size() < d) {
    for (const ScoredId& b : candidates.entries) {
      if (chosen.size() >= d) break;
      if (b.id == v || contains(chosen, b.id)) continue;
      if (!skip_mrng && !check_mrng_tentative(graph, b.id, b.distance, chosen)) continue;
      VertexId n;
      try {
        n = select_edge_to_break(graph, b.id, query, forbidden, params.scheme);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoEligibleNeighbor) throw;
        continue;
      }
      graph.remove_edge(b.id, n);
      ++report.removed_edges;
      chosen.push_back(b);
      chosen.push_back({n, store.distance_unchecked(v, n)});
      forbidden.push_back(b.id);
      forbidden.push_back(n);
      if (!skip_mrng) report.mrng_neighbors += 2;
    }
    if (chosen.size() >= d) break;
    if (!skip_mrng) {
      skip_mrng = true;
      continue;
    }
    // Both passes exhausted the pool: widen the candidate search.
    if (candidates.entries.size() + 1 >= graph.size()) {
      throw Error(ErrorCode::GraphTooSmall, "no further neighbor candidates for vertex " + std::to_string(v));
    }
    search.k = static_cast<std::uint32_t>(std::min<std::size_t>(std::size_t(search.k) * 2, graph.size()));
    candidates = range_search(graph, std::span(&seed, 1), query, search);
    ++report.search_widenings;
  }

  for (const ScoredId& u : chosen) {
    graph.add_edge(v, u.id, u.distance);
    ++report.added_edges;
  }

  if (params.optimize_new_edges) {
    for (const ScoredId& u : chosen) {
      if (contains(candidates.entries, u.id)) continue;
      if (!graph.has_edge(v, u.id)) continue;
      const OptimizeResult result = optimize_edge(graph, v, u.id, params.opt);
      ++report.optimize_calls;
      if (result.outcome == OptimizeOutcome::Committed) ++report.optimize_commits;
    }
  }
  return report;
}

DegGraph build(FeatureStore dataset, const BuildParams& params, const BuildProgress& progress) {
  params.validate();
  const std::uint32_t d = params.degree;
  const std::size_t n = dataset.size();
  if (n < std::size_t(d) + 1) {
    throw Error(ErrorCode::DatasetTooSmall,
                std::to_string(n) + " vectors, need at least " + std::to_string(d + 1));
  }

  DegGraph graph(std::move(dataset), d);
  graph.reserve(n);
  for (std::uint32_t i = 0; i <= d; ++i) graph.add_vertex();
  for (VertexId a = 0; a <= d; ++a) {
    for (VertexId b = a + 1; b <= d; ++b) graph.add_edge(a, b, graph.distance(a, b));
  }
  if (progress) progress(graph, n);

  while (graph.size() < n) {
    const VertexId v = graph.add_vertex();
    extend_graph(graph, v, params);
    if (progress) progress(graph, n);
  }
  return graph;
}

}  // namespace deg
