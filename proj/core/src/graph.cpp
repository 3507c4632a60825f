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
#include "deg/graph.hpp"

#include <algorithm>
#include <string>

namespace deg {

namespace {

std::string edge_name(VertexId u, VertexId v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

void ModificationLog::add_edge(DegGraph& graph, VertexId u, VertexId v, float weight) {
  graph.add_edge(u, v, weight);
  entries_.push_back({LogEntry::Kind::AddedEdge, u, v, weight});
}

float ModificationLog::remove_edge(DegGraph& graph, VertexId u, VertexId v) {
  const float weight = graph.remove_edge(u, v);
  entries_.push_back({LogEntry::Kind::RemovedEdge, u, v, weight});
  return weight;
}

void DegGraph::validate_degree(std::uint32_t degree) {
  if (degree < 4 || degree % 2 != 0) {
    throw Error(ErrorCode::OddOrTinyDegree, "degree must be even and >= 4, got " + std::to_string(degree));
  }
}

DegGraph::DegGraph(FeatureStore features, std::uint32_t degree) : features_(std::move(features)), degree_(degree) {
  validate_degree(degree);
}

DegGraph DegGraph::from_raw(FeatureStore features, std::uint32_t degree, std::vector<VertexId> neighbor_ids,
                            std::vector<float> weights, std::vector<std::uint32_t> degrees) {
  DegGraph graph(std::move(features), degree);
  const std::size_t n = degrees.size();
  if (n > graph.features_.size()) {
    throw Error(ErrorCode::InvalidArgument, "more vertices than feature rows");
  }
  if (neighbor_ids.size() != n * degree || (!weights.empty() && weights.size() != n * degree)) {
    throw Error(ErrorCode::InvalidArgument, "adjacency block size does not match vertex count");
  }
  std::size_t total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (degrees[v] > degree) throw Error(ErrorCode::DegreeOverflow, "vertex " + std::to_string(v));
    for (std::uint32_t i = 0; i < degrees[v]; ++i) {
      if (neighbor_ids[v * degree + i] >= n) {
        throw Error(ErrorCode::UnknownVertex, "neighbor id out of range at vertex " + std::to_string(v));
      }
    }
    total += degrees[v];
  }
  graph.has_weights_ = !weights.empty() || n == 0;
  graph.ids_ = std::move(neighbor_ids);
  graph.weights_ = std::move(weights);
  graph.counts_ = std::move(degrees);
  graph.endpoint_total_ = total;
  return graph;
}

void DegGraph::check_vertex(VertexId v) const {
  if (v >= counts_.size()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
}

void DegGraph::check_mutable() const {
  if (!has_weights_) throw Error(ErrorCode::SearchOnlyGraph, "graph was loaded without edge weights");
}

VertexId DegGraph::add_vertex() {
  check_mutable();
  if (counts_.size() >= features_.size()) {
    throw Error(ErrorCode::UnknownVertex, "feature store has no unused row for a new vertex");
  }
  const auto id = static_cast<VertexId>(counts_.size());
  counts_.push_back(0);
  ids_.resize(ids_.size() + degree_, 0);
  weights_.resize(weights_.size() + degree_, 0.0f);
  return id;
}

VertexId DegGraph::add_vertex(std::span<const float> row) {
  check_mutable();
  if (counts_.size() != features_.size()) {
    throw Error(ErrorCode::InvalidArgument, "feature store holds rows that are not vertices yet");
  }
  features_.append_vector(row);
  return add_vertex();
}

void DegGraph::reserve(std::size_t vertices) {
  counts_.reserve(vertices);
  ids_.reserve(vertices * degree_);
  if (has_weights_) weights_.reserve(vertices * degree_);
}

std::uint32_t DegGraph::find(VertexId u, VertexId v) const noexcept {
  const VertexId* begin = ids_.data() + slot(u);
  const VertexId* end = begin + counts_[u];
  const VertexId* it = std::lower_bound(begin, end, v);
  return (it != end && *it == v) ? static_cast<std::uint32_t>(it - begin) : counts_[u];
}

void DegGraph::insert_half(VertexId u, VertexId v, float weight) {
  VertexId* ids = ids_.data() + slot(u);
  float* weights = weights_.data() + slot(u);
  const std::uint32_t count = counts_[u];
  const auto pos = static_cast<std::uint32_t>(std::lower_bound(ids, ids + count, v) - ids);
  std::copy_backward(ids + pos, ids + count, ids + count + 1);
  std::copy_backward(weights + pos, weights + count, weights + count + 1);
  ids[pos] = v;
  weights[pos] = weight;
  ++counts_[u];
}

void DegGraph::erase_half(VertexId u, std::uint32_t pos) {
  VertexId* ids = ids_.data() + slot(u);
  float* weights = weights_.data() + slot(u);
  const std::uint32_t count = counts_[u];
  std::copy(ids + pos + 1, ids + count, ids + pos);
  std::copy(weights + pos + 1, weights + count, weights + pos);
  --counts_[u];
}

void DegGraph::add_edge(VertexId u, VertexId v, float weight) {
  check_mutable();
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error(ErrorCode::SelfLoop, edge_name(u, v));
  if (find(u, v) != counts_[u]) throw Error(ErrorCode::DuplicateEdge, edge_name(u, v));
  if (counts_[u] >= degree_ || counts_[v] >= degree_) throw Error(ErrorCode::DegreeOverflow, edge_name(u, v));
  insert_half(u, v, weight);
  insert_half(v, u, weight);
  endpoint_total_ += 2;
}

float DegGraph::remove_edge(VertexId u, VertexId v) {
  check_mutable();
  check_vertex(u);
  check_vertex(v);
  const std::uint32_t pu = find(u, v);
  const std::uint32_t pv = find(v, u);
  if (pu == counts_[u] || pv == counts_[v]) throw Error(ErrorCode::MissingEdge, edge_name(u, v));
  const float weight = weights_[slot(u) + pu];
  erase_half(u, pu);
  erase_half(v, pv);
  endpoint_total_ -= 2;
  return weight;
}

bool DegGraph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return find(u, v) != counts_[u];
}

float DegGraph::edge_weight(VertexId u, VertexId v) const {
  check_mutable();
  check_vertex(u);
  check_vertex(v);
  const std::uint32_t pos = find(u, v);
  if (pos == counts_[u]) throw Error(ErrorCode::MissingEdge, edge_name(u, v));
  return weights_[slot(u) + pos];
}

std::uint32_t DegGraph::degree(VertexId v) const {
  check_vertex(v);
  return counts_[v];
}

std::span<const float> DegGraph::neighbor_weights(VertexId v) const {
  check_mutable();
  check_vertex(v);
  return {weights_.data() + slot(v), counts_[v]};
}

std::vector<Neighbor> DegGraph::neighbors(VertexId v) const {
  check_vertex(v);
  std::vector<Neighbor> out;
  out.reserve(counts_[v]);
  for (std::uint32_t i = 0; i < counts_[v]; ++i) {
    out.push_back({ids_[slot(v) + i], has_weights_ ? weights_[slot(v) + i] : 0.0f});
  }
  return out;
}

bool DegGraph::same_adjacency(const DegGraph& other) const {
  if (degree_ != other.degree_ || counts_ != other.counts_ || has_weights_ != other.has_weights_) return false;
  for (VertexId v = 0; v < counts_.size(); ++v) {
    const std::size_t base = slot(v);
    for (std::uint32_t i = 0; i < counts_[v]; ++i) {
      if (ids_[base + i] != other.ids_[base + i]) return false;
      if (has_weights_ && weights_[base + i] != other.weights_[base + i]) return false;
    }
  }
  return true;
}

bool DegGraph::operator==(const DegGraph& other) const {
  return same_adjacency(other) && features_ == other.features_;
}

void apply_log(DegGraph& graph, const ModificationLog& log) {
  for (const LogEntry& e : log.entries()) {
    if (e.kind == LogEntry::Kind::AddedEdge) {
      graph.add_edge(e.u, e.v, e.weight);
    } else {
      graph.remove_edge(e.u, e.v);
    }
  }
}

void revert_log(DegGraph& graph, const ModificationLog& log) {
  const auto entries = log.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const LogEntry& e = *it;
    if (e.kind == LogEntry::Kind::AddedEdge) {
      if (!graph.has_edge(e.u, e.v) || graph.edge_weight(e.u, e.v) != e.weight) {
        throw Error(ErrorCode::InconsistentLog, "added edge " + edge_name(e.u, e.v) + " is not present");
      }
      graph.remove_edge(e.u, e.v);
    } else {
      if (graph.has_edge(e.u, e.v)) {
        throw Error(ErrorCode::InconsistentLog, "removed edge " + edge_name(e.u, e.v) + " is still present");
      }
      try {
        graph.add_edge(e.u, e.v, e.weight);
      } catch (const Error& err) {
        throw Error(ErrorCode::InconsistentLog, "cannot restore " + edge_name(e.u, e.v) + ": " + err.what());
      }
    }
  }
}

}  // namespace deg
