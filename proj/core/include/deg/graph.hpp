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
#include <span>
#include <vector>

#include "deg/error.hpp"
#include "deg/metric.hpp"

namespace deg {

struct Neighbor {
  VertexId id;
  float weight;

  bool operator==(const Neighbor&) const = default;
};

struct LogEntry {
  enum class Kind : std::uint8_t { AddedEdge, RemovedEdge };

  Kind kind;
  VertexId u;
  VertexId v;
  float weight;
};

class DegGraph;

/// Ordered history of edge mutations. Reverting replays the entries
/// backwards with inverse actions.
class ModificationLog {
 public:
  // Mutate `graph` and record the change.
  void add_edge(DegGraph& graph, VertexId u, VertexId v, float weight);
  float remove_edge(DegGraph& graph, VertexId u, VertexId v);

  void record(LogEntry entry) { entries_.push_back(entry); }

  std::span<const LogEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  void clear() noexcept { entries_.clear(); }

 private:
  std::vector<LogEntry> entries_;
};

/// Even-regular undirected weighted graph over the rows of a FeatureStore.
///
/// Every vertex owns a fixed block of `edges_per_vertex()` slots holding its
/// neighbor ids in ascending order plus the matching edge weights. The graph
/// only enforces the upper degree bound; construction and optimization hold
/// vertices below `d` while they work and restore regularity before
/// returning.
///
/// A graph loaded without weights is search-only and rejects mutation.
class DegGraph {
 public:
  /// Throws OddOrTinyDegree unless `degree` is even and at least 4.
  static void validate_degree(std::uint32_t degree);

  /// Empty graph bound to `features`. Rows of the store become vertices
  /// through add_vertex().
  DegGraph(FeatureStore features, std::uint32_t degree);

  /// Assemble a graph from raw adjacency blocks. `neighbor_ids` and
  /// `weights` hold `vertex_count * degree` entries (weights may be empty for
  /// a search-only graph); `degrees` holds the used slot count per vertex.
  static DegGraph from_raw(FeatureStore features, std::uint32_t degree, std::vector<VertexId> neighbor_ids,
                           std::vector<float> weights, std::vector<std::uint32_t> degrees);

  std::uint32_t edges_per_vertex() const noexcept { return degree_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }
  bool has_weights() const noexcept { return has_weights_; }
  std::size_t edge_count() const noexcept { return endpoint_total_ / 2; }

  const FeatureStore& features() const noexcept { return features_; }
  std::span<const float> feature(VertexId v) const { return features_.row(v); }

  /// Turn the next unused row of the feature store into an edgeless vertex.
  VertexId add_vertex();
  /// Append `row` to the feature store and add it as an edgeless vertex.
  VertexId add_vertex(std::span<const float> row);
  void reserve(std::size_t vertices);

  void add_edge(VertexId u, VertexId v, float weight);
  /// Returns the removed edge's weight.
  float remove_edge(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const;
  float edge_weight(VertexId u, VertexId v) const;
  std::uint32_t degree(VertexId v) const;

  std::span<const VertexId> neighbor_ids(VertexId v) const {
    check_vertex(v);
    return {ids_.data() + slot(v), counts_[v]};
  }
  std::span<const float> neighbor_weights(VertexId v) const;
  std::vector<Neighbor> neighbors(VertexId v) const;

  // Unchecked accessors for traversal loops.
  std::span<const VertexId> neighbor_ids_unchecked(VertexId v) const noexcept {
    return {ids_.data() + slot(v), counts_[v]};
  }
  float distance(VertexId a, VertexId b) const noexcept { return features_.distance_unchecked(a, b); }

  /// Flat storage views, used for serialization.
  std::span<const VertexId> raw_neighbor_ids() const noexcept { return ids_; }
  std::span<const float> raw_weights() const noexcept { return weights_; }
  std::span<const std::uint32_t> raw_degrees() const noexcept { return counts_; }

  /// Deep comparison of degree, vertices, adjacency and weights.
  bool same_adjacency(const DegGraph& other) const;
  bool operator==(const DegGraph& other) const;

 private:
  std::size_t slot(VertexId v) const noexcept { return std::size_t(v) * degree_; }
  void check_vertex(VertexId v) const;
  void check_mutable() const;
  // Position of `v` in the sorted block of `u`, or counts_[u] if absent.
  std::uint32_t find(VertexId u, VertexId v) const noexcept;
  void insert_half(VertexId u, VertexId v, float weight);
  void erase_half(VertexId u, std::uint32_t pos);

  FeatureStore features_;
  std::uint32_t degree_;
  bool has_weights_ = true;
  std::size_t endpoint_total_ = 0;
  std::vector<VertexId> ids_;
  std::vector<float> weights_;
  std::vector<std::uint32_t> counts_;
};

/// Re-apply the log's entries in order.
void apply_log(DegGraph& graph, const ModificationLog& log);
/// Undo the log's entries in reverse order. Throws InconsistentLog when the
/// current adjacency does not match what the log expects.
void revert_log(DegGraph& graph, const ModificationLog& log);

}  // namespace deg
