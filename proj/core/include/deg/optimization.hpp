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

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>

#include "deg/graph.hpp"

namespace deg {

/// How edge weights enter the swap gain. `Raw` sums the metric value as
/// stored; `Sqrt` sums its square root (true Euclidean lengths when the
/// metric is squared Euclidean).
enum class GainMetric : std::uint8_t { Raw, Sqrt };

struct OptimizeParams {
  std::uint32_t k = 30;
  float eps = 0.001f;
  /// Maximum number of swap iterations before all changes are reverted.
  std::uint32_t iterations = 5;
  GainMetric gain_metric = GainMetric::Raw;
};

enum class OptimizeOutcome { Committed, Reverted };

struct OptimizeResult {
  OptimizeOutcome outcome = OptimizeOutcome::Reverted;
  /// Reduction of the summed edge cost; 0 when reverted.
  double gain = 0.0;
  /// Swap iterations performed.
  std::uint32_t iterations = 0;
};

/// Try to replace edge (v1, v2) by a cheaper edge constellation through a
/// chain of swaps. Either commits a strictly positive gain or restores the
/// exact prior adjacency. Degrees and connectivity are preserved in both
/// outcomes.
OptimizeResult optimize_edge(DegGraph& graph, VertexId v1, VertexId v2, const OptimizeParams& params);

struct DynamicStepReport {
  VertexId vertex = 0;
  std::uint32_t optimize_calls = 0;
  std::uint32_t commits = 0;
  double gain = 0.0;
};

/// Pick a uniformly random vertex, optimize each of its edges that fails the
/// MRNG check, then optimize its longest remaining edge.
DynamicStepReport dynamic_edge_optimization(DegGraph& graph, const OptimizeParams& params, std::mt19937_64& rng);

struct RefineBudget {
  std::optional<std::uint64_t> iterations;
  std::optional<std::chrono::duration<double>> time;
};

struct RefinementReport {
  std::uint64_t iterations = 0;
  std::uint64_t optimize_calls = 0;
  std::uint64_t commits = 0;
  double and_before = 0.0;
  double and_after = 0.0;
};

/// Run dynamic_edge_optimization until either budget is exhausted. An empty
/// budget does nothing.
RefinementReport refine_for(DegGraph& graph, const RefineBudget& budget, const OptimizeParams& params,
                            std::mt19937_64& rng);

}  // namespace deg
