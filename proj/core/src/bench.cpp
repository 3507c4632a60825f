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
#include "deg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "deg/io.hpp"
#include "deg/search.hpp"

namespace deg {

namespace {

using Clock = std::chrono::steady_clock;

struct Pass {
  double seconds = 0.0;
  double recall = 0.0;
  double checked = 0.0;
  double hops = 0.0;
};

template <typename RunQuery>
BenchRow measure(std::size_t query_count, float eps, std::uint32_t k, std::uint32_t repetitions, RunQuery&& run) {
  std::vector<double> times;
  Pass first;
  for (std::uint32_t rep = 0; rep < std::max<std::uint32_t>(1, repetitions); ++rep) {
    Pass pass;
    const auto start = Clock::now();
    for (std::size_t q = 0; q < query_count; ++q) {
      const auto [recall, checked, hops] = run(q);
      pass.recall += recall;
      pass.checked += double(checked);
      pass.hops += double(hops);
    }
    pass.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (rep == 0) first = pass;
    times.push_back(pass.seconds);
  }
  std::sort(times.begin(), times.end());
  const double median = times[times.size() / 2];
  const double nq = double(std::max<std::size_t>(query_count, 1));
  BenchRow row;
  row.eps = eps;
  row.k = k;
  row.recall = first.recall / nq;
  row.queries_per_second = median > 0.0 ? double(query_count) / median : 0.0;
  row.mean_checked = first.checked / nq;
  row.mean_hops = first.hops / nq;
  return row;
}

struct QueryOutcome {
  double recall;
  std::size_t checked;
  std::size_t hops;
};

}  // namespace

std::vector<float> default_eps_sweep() { return {0.0f, 0.02f, 0.05f, 0.1f, 0.15f, 0.2f, 0.3f, 0.5f}; }

std::vector<BenchRow> search_bench(const DegGraph& graph, const FeatureStore& queries, const GroundTruth& truth,
                                   const BenchOptions& options) {
  if (queries.dim() != graph.features().dim()) {
    throw Error(ErrorCode::DimensionMismatch, "queries have dimension " + std::to_string(queries.dim()) +
                                                  ", graph has " + std::to_string(graph.features().dim()));
  }
  if (truth.size() < queries.size()) throw Error(ErrorCode::InvalidArgument, "ground truth has too few rows");
  const VertexId seed = median_seed(graph);
  std::vector<BenchRow> rows;
  for (float eps : options.eps_sweep) {
    const SearchParams params{options.k, eps, options.max_checked};
    rows.push_back(measure(queries.size(), eps, options.k, options.repetitions, [&](std::size_t q) {
      const SearchResult r = range_search(graph, std::span(&seed, 1), queries.row(VertexId(q)), params);
      const auto ids = r.ids();
      return QueryOutcome{recall_at_k(ids, truth[q], options.k), r.checked_count, r.hop_count};
    }));
  }
  return rows;
}

ExploreSet make_explore_set(const DegGraph& graph, std::size_t count, std::uint32_t k, std::uint64_t seed) {
  if (k == 0 || k >= graph.size()) {
    throw Error(ErrorCode::KTooLargeForDataset,
                "k=" + std::to_string(k) + " needs more than " + std::to_string(graph.size()) + " vertices");
  }
  ExploreSet set;
  set.queries.resize(graph.size());
  std::iota(set.queries.begin(), set.queries.end(), VertexId{0});
  if (count < graph.size()) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, set.queries.size() - 1);
      std::swap(set.queries[i], set.queries[pick(rng)]);
    }
    set.queries.resize(count);
  }
  set.truth.reserve(set.queries.size());
  for (VertexId q : set.queries) {
    set.truth.push_back(brute_force_knn(graph.features(), graph.feature(q), k, q, graph.size()));
  }
  return set;
}

std::vector<BenchRow> explore_bench(const DegGraph& graph, const ExploreSet& set, const BenchOptions& options) {
  if (options.k == 0 || options.k >= graph.size()) {
    throw Error(ErrorCode::KTooLargeForDataset, "k=" + std::to_string(options.k));
  }
  std::vector<BenchRow> rows;
  std::vector<VertexId> ids;
  for (float eps : options.eps_sweep) {
    const SearchParams params{options.k + 1, eps, options.max_checked};
    rows.push_back(measure(set.queries.size(), eps, options.k, options.repetitions, [&](std::size_t q) {
      const VertexId query = set.queries[q];
      const SearchResult r = range_search(graph, std::span(&query, 1), graph.feature(query), params);
      ids.clear();
      for (const ScoredId& e : r.entries) {
        if (e.id != query && ids.size() < options.k) ids.push_back(e.id);
      }
      return QueryOutcome{recall_at_k(ids, set.truth[q], options.k), r.checked_count, r.hop_count};
    }));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "eps,k,recall,qps,mean_checked,mean_hops\n";
  char line[256];
  for (const BenchRow& r : rows) {
    std::snprintf(line, sizeof(line), "%g,%u,%.6f,%.2f,%.2f,%.2f\n", double(r.eps), r.k, r.recall,
                  r.queries_per_second, r.mean_checked, r.mean_hops);
    out << line;
  }
}

std::vector<ScalingRow> scaling_bench(const FeatureStore& base, const FeatureStore& queries,
                                      const ScalingOptions& options, const Logger& log) {
  if (!std::is_sorted(options.sizes.begin(), options.sizes.end())) {
    throw Error(ErrorCode::InvalidArgument, "scaling sizes must be ascending");
  }
  if (!options.sizes.empty() && options.sizes.back() > base.size()) {
    throw Error(ErrorCode::NTooLarge, "largest size exceeds the base set");
  }
  auto say = [&](const std::string& text) {
    if (log) log(text);
  };

  std::vector<ScalingRow> rows;
  for (std::size_t n : options.sizes) {
    ScalingRow row;
    row.n = n;
    Subsample sample = subsample(base, n, options.seed);
    const GroundTruth truth = compute_ground_truth(sample.store, queries, options.k);

    const auto start = Clock::now();
    const DegGraph graph = build(std::move(sample.store), options.params);
    row.build_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    row.add_ms_per_vertex = row.build_seconds * 1e3 / double(n);
    say("n=" + std::to_string(n) + " built in " + std::to_string(row.build_seconds) + " s");

    BenchOptions bench;
    bench.k = options.k;
    bench.repetitions = 1;
    auto recall_at = [&](float eps) {
      bench.eps_sweep = {eps};
      return search_bench(graph, queries, truth, bench).front().recall;
    };

    float lo = 0.0f, hi = options.eps_max;
    if (recall_at(lo) >= options.target_recall) {
      hi = lo;
    } else if (recall_at(hi) >= options.target_recall) {
      for (int step = 0; step < options.bisection_steps; ++step) {
        const float mid = 0.5f * (lo + hi);
        if (recall_at(mid) >= options.target_recall) hi = mid;
        else lo = mid;
      }
    }

    bench.eps_sweep = {hi};
    bench.repetitions = options.repetitions;
    const BenchRow timed = search_bench(graph, queries, truth, bench).front();
    row.eps = hi;
    row.recall = timed.recall;
    row.reached_target = timed.recall >= options.target_recall;
    row.search_ms_per_query = timed.queries_per_second > 0.0 ? 1e3 / timed.queries_per_second : 0.0;
    row.mean_checked = timed.mean_checked;
    say("n=" + std::to_string(n) + " eps=" + std::to_string(hi) + " recall=" + std::to_string(row.recall) +
        " ms/query=" + std::to_string(row.search_ms_per_query));
    rows.push_back(row);
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "n,build_time_s,add_time_per_vertex_ms,eps,recall,search_time_per_query_ms,mean_checked,reached_target\n";
  char line[256];
  for (const ScalingRow& r : rows) {
    std::snprintf(line, sizeof(line), "%zu,%.4f,%.5f,%g,%.6f,%.5f,%.2f,%d\n", r.n, r.build_seconds,
                  r.add_ms_per_vertex, double(r.eps), r.recall, r.search_ms_per_query, r.mean_checked,
                  r.reached_target ? 1 : 0);
    out << line;
  }
}

}  // namespace deg
