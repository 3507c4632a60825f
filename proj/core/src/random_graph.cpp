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
#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "deg/construction.hpp"

namespace deg {

namespace {

// Steger-Wormald pairing: draw random pairs of open endpoint slots, rejecting
// loops and parallel edges pair by pair instead of rejecting the whole
// matching. Returns false when the remaining slots cannot be paired.
bool try_pairing(std::size_t n, std::uint32_t d, std::mt19937_64& rng, std::vector<std::vector<VertexId>>& adj) {
  adj.assign(n, {});
  for (auto& list : adj) list.reserve(d);
  std::vector<VertexId> open;
  open.reserve(n * d);
  for (VertexId v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < d; ++i) open.push_back(v);
  }

  auto adjacent = [&](VertexId a, VertexId b) { return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end(); };
  auto take = [&](std::size_t i, std::size_t j) {
    const VertexId a = open[i], b = open[j];
    adj[a].push_back(b);
    adj[b].push_back(a);
    if (i < j) std::swap(i, j);
    open[i] = open.back();
    open.pop_back();
    open[j] = open.back();
    open.pop_back();
  };

  while (!open.empty()) {
    bool paired = false;
    for (int attempt = 0; attempt < 64 && !paired; ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
      const std::size_t i = pick(rng), j = pick(rng);
      if (i == j || open[i] == open[j] || adjacent(open[i], open[j])) continue;
      take(i, j);
      paired = true;
    }
    if (paired) continue;
    std::vector<std::pair<std::size_t, std::size_t>> valid;
    for (std::size_t i = 0; i < open.size(); ++i) {
      for (std::size_t j = i + 1; j < open.size(); ++j) {
        if (open[i] != open[j] && !adjacent(open[i], open[j])) valid.emplace_back(i, j);
      }
    }
    if (valid.empty()) return false;
    std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
    const auto [i, j] = valid[pick(rng)];
    take(i, j);
  }
  return true;
}

bool connected(const std::vector<std::vector<VertexId>>& adj) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId n : adj[v]) {
      if (!seen[n]) {
        seen[n] = 1;
        ++reached;
        stack.push_back(n);
      }
    }
  }
  return reached == adj.size();
}

}  // namespace

DegGraph make_random_regular_graph(FeatureStore dataset, std::uint32_t degree, std::uint64_t seed) {
  DegGraph::validate_degree(degree);
  const std::size_t n = dataset.size();
  if (n < std::size_t(degree) + 1) {
    throw Error(ErrorCode::InfeasibleDegreeSequence,
                std::to_string(n) + " vertices cannot form a simple " + std::to_string(degree) + "-regular graph");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<VertexId>> adj;
  bool ok = false;
  for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
    ok = try_pairing(n, degree, rng, adj) && connected(adj);
  }
  if (!ok) throw Error(ErrorCode::InfeasibleDegreeSequence, "random pairing did not converge");

  DegGraph graph(std::move(dataset), degree);
  graph.reserve(n);
  for (std::size_t i = 0; i < n; ++i) graph.add_vertex();
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b : adj[a]) {
      if (a < b) graph.add_edge(a, b, graph.distance(a, b));
    }
  }
  return graph;
}

}  // namespace deg
