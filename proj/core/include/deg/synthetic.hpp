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
#include <vector>

#include "deg/metric.hpp"

namespace deg {

/// Mixture of low-rank Gaussian clusters, clamped and rounded to the byte
/// range like SIFT descriptors. Stands in for real descriptor sets when none
/// are available locally.
struct ClusteredSpec {
  std::uint32_t dim = 128;
  std::uint32_t clusters = 64;
  /// Rank of each cluster's subspace, i.e. the local intrinsic dimension.
  std::uint32_t intrinsic_dim = 10;
  float center_low = 10.0f;
  float center_high = 90.0f;
  float spread = 25.0f;
  float noise = 1.5f;
  bool quantize = true;
};

class ClusteredGenerator {
 public:
  ClusteredGenerator(const ClusteredSpec& spec, std::uint64_t model_seed);

  /// Draw `n` rows. Different stream seeds give independent samples from
  /// the same distribution (e.g. base set vs. queries).
  FeatureStore sample(std::size_t n, std::uint64_t stream_seed, Metric metric = Metric::SquaredEuclidean) const;

  const ClusteredSpec& spec() const noexcept { return spec_; }

 private:
  ClusteredSpec spec_;
  std::vector<float> centers_;  // clusters x dim
  std::vector<float> bases_;    // clusters x dim x intrinsic_dim
};

/// The SIFT-like distribution used across tests, tools and benchmarks.
ClusteredGenerator sift_like_generator();

/// i.i.d. uniform rows in [low, high).
FeatureStore make_uniform(std::size_t n, std::uint32_t dim, std::uint64_t seed, float low = 0.0f,
                          float high = 1.0f, Metric metric = Metric::SquaredEuclidean);

}  // namespace deg
