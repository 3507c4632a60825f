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
#include "deg/search.hpp"

#include <algorithm>
#include <string>

namespace deg {

namespace {

struct FartherFirst {
  bool operator()(const ScoredId& a, const ScoredId& b) const noexcept { return closer(b, a); }
};

struct CloserFirst {
  bool operator()(const ScoredId& a, const ScoredId& b) const noexcept { return closer(a, b); }
};

struct SearchScratch {
  VisitedSet checked;
  std::vector<ScoredId> candidates;  // min-heap via FartherFirst
  std::vector<ScoredId> results;     // max-heap via CloserFirst
};

SearchScratch& scratch() {
  thread_local SearchScratch s;
  return s;
}

}  // namespace

std::vector<VertexId> SearchResult::ids() const {
  std::vector<VertexId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

void VisitedSet::reset(std::size_t n) {
  if (marks_.size() < n) marks_.resize(n, 0);
  if (++epoch_ == 0) {
    std::fill(marks_.begin(), marks_.end(), 0);
    epoch_ = 1;
  }
}

SearchResult range_search(const DegGraph& graph, std::span<const VertexId> seeds, std::span<const float> query,
                          const SearchParams& params) {
  if (seeds.empty()) throw Error(ErrorCode::EmptySeeds, "range search needs at least one seed");
  if (params.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (!(params.eps >= 0.0f)) throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  const FeatureStore& store = graph.features();
  if (query.size() != store.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(query.size()) +
                                                  " components, graph expects " + std::to_string(store.dim()));
  }
  for (VertexId s : seeds) {
    if (s >= graph.size()) throw Error(ErrorCode::UnknownSeed, "seed " + std::to_string(s));
  }

  SearchScratch& sc = scratch();
  sc.checked.reset(graph.size());
  auto& candidates = sc.candidates;
  auto& results = sc.results;
  candidates.clear();
  results.clear();

  const std::size_t k = params.k;
  const std::size_t max_checked =
      params.max_checked == 0 ? std::numeric_limits<std::size_t>::max() : params.max_checked;
  const float* q = query.data();
  SearchResult out;

  for (VertexId s : seeds) {
    if (sc.checked.test_and_set(s)) continue;
    const ScoredId entry{s, store.distance_unchecked(q, s)};
    ++out.checked_count;
    candidates.push_back(entry);
    std::push_heap(candidates.begin(), candidates.end(), FartherFirst{});
    results.push_back(entry);
    std::push_heap(results.begin(), results.end(), CloserFirst{});
  }

  float radius = std::numeric_limits<float>::infinity();
  auto trim = [&] {
    while (results.size() > k) {
      std::pop_heap(results.begin(), results.end(), CloserFirst{});
      results.pop_back();
      radius = results.front().distance;
    }
  };
  trim();

  bool budget_left = out.checked_count < max_checked;
  while (!candidates.empty() && budget_left) {
    std::pop_heap(candidates.begin(), candidates.end(), FartherFirst{});
    const ScoredId next = candidates.back();
    candidates.pop_back();
    const float range = radius * (1.0f + params.eps);
    if (next.distance > range) break;
    ++out.hop_count;

    for (VertexId n : graph.neighbor_ids_unchecked(next.id)) {
      if (sc.checked.test_and_set(n)) continue;
      const float dist = store.distance_unchecked(q, n);
      ++out.checked_count;
      if (dist <= radius * (1.0f + params.eps)) {
        candidates.push_back({n, dist});
        std::push_heap(candidates.begin(), candidates.end(), FartherFirst{});
        if (dist <= radius) {
          results.push_back({n, dist});
          std::push_heap(results.begin(), results.end(), CloserFirst{});
          trim();
        }
      }
      if (out.checked_count >= max_checked) {
        budget_left = false;
        break;
      }
    }
  }

  out.entries.assign(results.begin(), results.end());
  std::sort(out.entries.begin(), out.entries.end(), closer);
  return out;
}

VertexId median_seed(const DegGraph& graph) {
  if (graph.empty()) throw Error(ErrorCode::EmptyGraph, "median seed of an empty graph");
  const FeatureStore& store = graph.features();
  const std::size_t dim = store.dim();
  std::vector<double> sum(dim, 0.0);
  for (VertexId v = 0; v < graph.size(); ++v) {
    const float* row = store.row_ptr(v);
    for (std::size_t i = 0; i < dim; ++i) sum[i] += row[i];
  }
  std::vector<float> centroid(dim);
  for (std::size_t i = 0; i < dim; ++i) centroid[i] = static_cast<float>(sum[i] / double(graph.size()));

  ScoredId best{0, store.distance_unchecked(centroid.data(), 0)};
  for (VertexId v = 1; v < graph.size(); ++v) {
    const ScoredId cand{v, store.distance_unchecked(centroid.data(), v)};
    if (closer(cand, best)) best = cand;
  }
  return best.id;
}

bool path_exists(const DegGraph& graph, std::span<const VertexId> from, std::span<const VertexId> targets,
                 std::size_t budget) {
  if (from.empty()) throw Error(ErrorCode::EmptySeeds, "path search needs a start vertex");
  if (targets.empty()) return false;
  for (VertexId v : from) {
    if (v >= graph.size()) throw Error(ErrorCode::UnknownSeed, "start " + std::to_string(v));
    if (std::find(targets.begin(), targets.end(), v) != targets.end()) return true;
  }
  for (VertexId t : targets) {
    if (t >= graph.size()) throw Error(ErrorCode::UnknownVertex, "target " + std::to_string(t));
  }

  const FeatureStore& store = graph.features();
  auto distance_to_targets = [&](VertexId v) {
    float best = std::numeric_limits<float>::infinity();
    for (VertexId t : targets) best = std::min(best, store.distance_unchecked(v, t));
    return best;
  };

  thread_local VisitedSet visited;
  visited.reset(graph.size());
  std::vector<ScoredId> open;
  std::size_t examined = 0;
  for (VertexId v : from) {
    if (visited.test_and_set(v)) continue;
    open.push_back({v, distance_to_targets(v)});
    ++examined;
  }
  std::make_heap(open.begin(), open.end(), FartherFirst{});

  while (!open.empty()) {
    std::pop_heap(open.begin(), open.end(), FartherFirst{});
    const VertexId current = open.back().id;
    open.pop_back();
    for (VertexId n : graph.neighbor_ids_unchecked(current)) {
      if (visited.test_and_set(n)) continue;
      if (std::find(targets.begin(), targets.end(), n) != targets.end()) return true;
      if (++examined > budget) return false;
      open.push_back({n, distance_to_targets(n)});
      std::push_heap(open.begin(), open.end(), FartherFirst{});
    }
  }
  return false;
}

}  // namespace deg
