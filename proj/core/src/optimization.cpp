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
#include "deg/optimization.hpp"

#include <cmath>
#include <string>

#include "deg/analysis.hpp"
#include "deg/construction.hpp"
#include "deg/search.hpp"

namespace deg {

namespace {

double edge_cost(float weight, GainMetric metric) {
  return metric == GainMetric::Raw ? double(weight) : std::sqrt(double(weight));
}

}  // namespace

// Vertex roles follow the swap chain: v1 and v2 are the endpoints of the
// edge under optimization, (v3, v4) is the edge given up so v2 can connect
// to v3, and (v5, v6) is the edge split to give v1 two new neighbors. After
// a failed closure the roles rotate so the vertex left dangling becomes the
// next v2.
OptimizeResult optimize_edge(DegGraph& graph, VertexId v1, VertexId v2, const OptimizeParams& params) {
  if (!graph.has_weights()) throw Error(ErrorCode::SearchOnlyGraph, "cannot optimize a graph without weights");
  if (!graph.has_edge(v1, v2)) {
    throw Error(ErrorCode::MissingEdge, "(" + std::to_string(v1) + "," + std::to_string(v2) + ")");
  }
  const FeatureStore& store = graph.features();
  const GainMetric metric = params.gain_metric;
  const SearchParams search{params.k, params.eps, 0};
  const std::size_t path_budget = std::size_t(params.k) * params.iterations;

  ModificationLog log;
  double gain = edge_cost(log.remove_edge(graph, v1, v2), metric);
  VertexId v3 = v1;
  VertexId v4 = v1;
  OptimizeResult result;

  for (std::uint32_t iteration = 0; iteration < params.iterations; ++iteration) {
    result.iterations = iteration + 1;

    // Best replacement partner v3 for v2, paid for by dropping (v3, v4).
    double best = gain;
    bool improved = false;
    VertexId best_s = 0, best_n = 0;
    {
      const VertexId seeds[2] = {v3, v4};
      const SearchResult found = range_search(graph, seeds, store.row(v2), search);
      for (const ScoredId& s : found.entries) {
        if (s.id == v1 || s.id == v2 || graph.has_edge(v2, s.id)) continue;
        const double join = edge_cost(s.distance, metric);
        const auto ids = graph.neighbor_ids(s.id);
        const auto weights = graph.neighbor_weights(s.id);
        for (std::size_t i = 0; i < ids.size(); ++i) {
          if (ids[i] == v2) continue;
          const double candidate = gain - join + edge_cost(weights[i], metric);
          if (best < candidate) {
            best = candidate;
            best_s = s.id;
            best_n = ids[i];
            improved = true;
          }
        }
      }
    }
    if (!improved) break;

    gain = best;
    v3 = best_s;
    v4 = best_n;
    log.remove_edge(graph, v3, v4);
    log.add_edge(graph, v2, v3, graph.distance(v2, v3));

    if (v1 == v4) {
      // v1 lost two edges: split one edge (v5, v6) and connect both ends.
      double best_close = 0.0;
      bool closable = false;
      VertexId v5 = 0, v6 = 0;
      const VertexId seeds[2] = {v2, v3};
      const SearchResult found = range_search(graph, seeds, store.row(v1), search);
      for (const ScoredId& s : found.entries) {
        if (s.id == v1 || graph.has_edge(v1, s.id)) continue;
        const double join_s = edge_cost(s.distance, metric);
        const auto ids = graph.neighbor_ids(s.id);
        const auto weights = graph.neighbor_weights(s.id);
        for (std::size_t i = 0; i < ids.size(); ++i) {
          const VertexId n = ids[i];
          if (n == v1 || graph.has_edge(v1, n)) continue;
          const double candidate =
              gain + edge_cost(weights[i], metric) - join_s - edge_cost(graph.distance(n, v1), metric);
          if (best_close < candidate) {
            best_close = candidate;
            v5 = s.id;
            v6 = n;
            closable = true;
          }
        }
      }
      if (closable) {
        log.remove_edge(graph, v5, v6);
        log.add_edge(graph, v1, v5, graph.distance(v1, v5));
        log.add_edge(graph, v1, v6, graph.distance(v1, v6));
        result.outcome = OptimizeOutcome::Committed;
        result.gain = best_close;
        return result;
      }
    } else if (!graph.has_edge(v1, v4)) {
      const float closing = graph.distance(v1, v4);
      const double remaining = gain - edge_cost(closing, metric);
      if (remaining > 0.0) {
        const VertexId seeds[2] = {v2, v3};
        if (path_exists(graph, seeds, std::span(&v1, 1), path_budget) ||
            path_exists(graph, seeds, std::span(&v4, 1), path_budget)) {
          log.add_edge(graph, v1, v4, closing);
          result.outcome = OptimizeOutcome::Committed;
          result.gain = remaining;
          return result;
        }
      }
    }

    const VertexId dangling = v4;
    v4 = v3;
    v3 = v2;
    v2 = dangling;
  }

  revert_log(graph, log);
  result.outcome = OptimizeOutcome::Reverted;
  result.gain = 0.0;
  return result;
}

DynamicStepReport dynamic_edge_optimization(DegGraph& graph, const OptimizeParams& params, std::mt19937_64& rng) {
  DynamicStepReport report;
  if (graph.empty()) return report;
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(graph.size() - 1));
  const VertexId v1 = pick(rng);
  report.vertex = v1;

  auto run = [&](VertexId v2) {
    const OptimizeResult r = optimize_edge(graph, v1, v2, params);
    ++report.optimize_calls;
    if (r.outcome == OptimizeOutcome::Committed) {
      ++report.commits;
      report.gain += r.gain;
    }
  };

  const auto initial = graph.neighbor_ids(v1);
  const std::vector<VertexId> neighbors(initial.begin(), initial.end());
  for (VertexId v2 : neighbors) {
    if (!graph.has_edge(v1, v2)) continue;
    if (!check_mrng(graph, v1, v2)) run(v2);
  }

  const auto ids = graph.neighbor_ids(v1);
  const auto weights = graph.neighbor_weights(v1);
  if (!ids.empty()) {
    std::size_t longest = 0;
    for (std::size_t i = 1; i < ids.size(); ++i) {
      if (weights[i] > weights[longest]) longest = i;
    }
    run(ids[longest]);
  }
  return report;
}

RefinementReport refine_for(DegGraph& graph, const RefineBudget& budget, const OptimizeParams& params,
                            std::mt19937_64& rng) {
  RefinementReport report;
  report.and_before = average_neighbor_distance(graph);
  if (budget.iterations || budget.time) {
    const auto start = std::chrono::steady_clock::now();
    while (true) {
      if (budget.iterations && report.iterations >= *budget.iterations) break;
      if (budget.time && std::chrono::steady_clock::now() - start >= *budget.time) break;
      const DynamicStepReport step = dynamic_edge_optimization(graph, params, rng);
      ++report.iterations;
      report.optimize_calls += step.optimize_calls;
      report.commits += step.commits;
    }
  }
  report.and_after = average_neighbor_distance(graph);
  return report;
}

}  // namespace deg
