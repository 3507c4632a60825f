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
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "deg/analysis.hpp"
#include "deg/construction.hpp"
#include "deg/graph.hpp"

namespace deg {

/// One point of a recall / throughput curve.
struct BenchRow {
  float eps = 0.0f;
  std::uint32_t k = 0;
  double recall = 0.0;
  double queries_per_second = 0.0;
  double mean_checked = 0.0;
  double mean_hops = 0.0;
};

std::vector<float> default_eps_sweep();

struct BenchOptions {
  std::uint32_t k = 10;
  std::vector<float> eps_sweep = default_eps_sweep();
  /// Timing is the median over this many back-to-back runs.
  std::uint32_t repetitions = 3;
  /// Checked-vertex cap per query, 0 for none.
  std::size_t max_checked = 0;
};

/// Run every query from the median seed for each eps and compare against
/// `truth`. Single-threaded.
std::vector<BenchRow> search_bench(const DegGraph& graph, const FeatureStore& queries, const GroundTruth& truth,
                                   const BenchOptions& options);

/// Indexed queries for exploratory search together with their true
/// neighbors, the query vertex itself excluded.
struct ExploreSet {
  std::vector<VertexId> queries;
  GroundTruth truth;
};

/// Draw `count` distinct random vertices (all of them if count >= |V|).
/// Throws KTooLargeForDataset when k >= |V|.
ExploreSet make_explore_set(const DegGraph& graph, std::size_t count, std::uint32_t k, std::uint64_t seed);

/// Each query is seeded at its own vertex; the vertex is dropped from the
/// result before scoring.
std::vector<BenchRow> explore_bench(const DegGraph& graph, const ExploreSet& set, const BenchOptions& options);

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

struct ScalingRow {
  std::size_t n = 0;
  double build_seconds = 0.0;
  double add_ms_per_vertex = 0.0;
  float eps = 0.0f;
  double recall = 0.0;
  double search_ms_per_query = 0.0;
  double mean_checked = 0.0;
  bool reached_target = false;
};

struct ScalingOptions {
  std::vector<std::size_t> sizes;
  double target_recall = 0.99;
  std::uint32_t k = 10;
  BuildParams params{};
  std::uint64_t seed = 1;
  std::uint32_t repetitions = 3;
  float eps_max = 1.0f;
  int bisection_steps = 10;
};

using Logger = std::function<void(std::string_view)>;

/// For each size: subsample the base set, build, then bisect eps until the
/// target recall is reached and time the queries at that eps.
std::vector<ScalingRow> scaling_bench(const FeatureStore& base, const FeatureStore& queries,
                                      const ScalingOptions& options, const Logger& log = {});

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);

}  // namespace deg
