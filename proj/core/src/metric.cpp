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
#include "deg/metric.hpp"

#include <cmath>
#include <string>

namespace deg {

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::SquaredEuclidean: return "l2";
    case Metric::Angular: return "angular";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  if (name == "l2" || name == "squared-euclidean") return Metric::SquaredEuclidean;
  if (name == "angular" || name == "cosine") return Metric::Angular;
  return std::nullopt;
}

namespace kernels {

// The simd reductions let the compiler reassociate the sums; results may
// differ from a sequential loop in the last bits.
float squared_l2(const float* a, const float* b, std::size_t dim) noexcept {
  float sum = 0.0f;
#pragma omp simd reduction(+ : sum)
  for (std::size_t i = 0; i < dim; ++i) {
    const float diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

float angular(const float* a, const float* b, std::size_t dim) noexcept {
  float d = 0.0f, x = 0.0f, y = 0.0f;
#pragma omp simd reduction(+ : d, x, y)
  for (std::size_t i = 0; i < dim; ++i) {
    d += a[i] * b[i];
    x += a[i] * a[i];
    y += b[i] * b[i];
  }
  // Zero vectors: identical zero rows are at distance 0, otherwise 1.
  if (x == 0.0f || y == 0.0f) return (x == 0.0f && y == 0.0f) ? 0.0f : 1.0f;
  const float cosine = d / std::sqrt(x * y);
  const float dist = 1.0f - cosine;
  return dist < 0.0f ? 0.0f : dist;
}

}  // namespace kernels

float distance(Metric metric, std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operands have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " components");
  }
  return metric == Metric::SquaredEuclidean ? kernels::squared_l2(a.data(), b.data(), a.size())
                                            : kernels::angular(a.data(), b.data(), a.size());
}

FeatureStore::FeatureStore(std::uint32_t dim, Metric metric) : dim_(dim), metric_(metric) {
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "feature dimension must be positive");
}

FeatureStore::FeatureStore(std::uint32_t dim, Metric metric, std::vector<float> rows)
    : FeatureStore(dim, metric) {
  if (rows.size() % dim != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(rows.size()) + " floats is not a multiple of dim " + std::to_string(dim));
  }
  data_ = std::move(rows);
}

void FeatureStore::check_id(VertexId id) const {
  if (id >= size()) throw Error(ErrorCode::UnknownVertex, "no feature row " + std::to_string(id));
}

std::span<const float> FeatureStore::row(VertexId id) const {
  check_id(id);
  return {row_ptr(id), dim_};
}

VertexId FeatureStore::append_vector(std::span<const float> row) {
  if (row.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "row has " + std::to_string(row.size()) + " components, store expects " + std::to_string(dim_));
  }
  const auto id = static_cast<VertexId>(size());
  data_.insert(data_.end(), row.begin(), row.end());
  return id;
}

float FeatureStore::distance(VertexId a, VertexId b) const {
  check_id(a);
  check_id(b);
  return distance_unchecked(a, b);
}

float FeatureStore::distance(std::span<const float> query, VertexId id) const {
  if (query.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "query has " + std::to_string(query.size()) + " components, store expects " + std::to_string(dim_));
  }
  check_id(id);
  return distance_unchecked(query.data(), id);
}

float FeatureStore::distance(std::span<const float> a, std::span<const float> b) const {
  if (a.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "left operand does not match store dimension");
  return deg::distance(metric_, a, b);
}

}  // namespace deg
