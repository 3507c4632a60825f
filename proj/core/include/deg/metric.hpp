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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "deg/error.hpp"

namespace deg {

/// Distance function used for every comparison, stored edge weight and gain
/// computation. Values are written to graph files as the tag byte.
enum class Metric : std::uint8_t {
  SquaredEuclidean = 0,
  Angular = 1,
};

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;

namespace kernels {

// Unchecked kernels. Both operands must point at `dim` floats.
float squared_l2(const float* a, const float* b, std::size_t dim) noexcept;
float angular(const float* a, const float* b, std::size_t dim) noexcept;

}  // namespace kernels

/// Checked distance between two vectors, throws DimensionMismatch.
float distance(Metric metric, std::span<const float> a, std::span<const float> b);

/// Row-major dense float vectors sharing one dimensionality and metric.
class FeatureStore {
 public:
  FeatureStore(std::uint32_t dim, Metric metric);
  FeatureStore(std::uint32_t dim, Metric metric, std::vector<float> rows);

  std::uint32_t dim() const noexcept { return dim_; }
  Metric metric() const noexcept { return metric_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> row(VertexId id) const;
  const float* row_ptr(VertexId id) const noexcept { return data_.data() + std::size_t(id) * dim_; }
  const std::vector<float>& data() const noexcept { return data_; }

  VertexId append_vector(std::span<const float> row);
  void reserve(std::size_t rows) { data_.reserve(rows * dim_); }

  float distance(VertexId a, VertexId b) const;
  float distance(std::span<const float> query, VertexId id) const;
  float distance(std::span<const float> a, std::span<const float> b) const;

  // Hot path: no bounds or dimension checks.
  float distance_unchecked(const float* query, VertexId id) const noexcept {
    return metric_ == Metric::SquaredEuclidean ? kernels::squared_l2(query, row_ptr(id), dim_)
                                               : kernels::angular(query, row_ptr(id), dim_);
  }
  float distance_unchecked(VertexId a, VertexId b) const noexcept {
    return distance_unchecked(row_ptr(a), b);
  }

  bool operator==(const FeatureStore& other) const = default;

 private:
  void check_id(VertexId id) const;

  std::uint32_t dim_;
  Metric metric_;
  std::vector<float> data_;
};

}  // namespace deg
