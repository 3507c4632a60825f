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
#include "deg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace deg {

ClusteredGenerator::ClusteredGenerator(const ClusteredSpec& spec, std::uint64_t model_seed) : spec_(spec) {
  if (spec.dim == 0 || spec.clusters == 0 || spec.intrinsic_dim == 0) {
    throw Error(ErrorCode::InvalidArgument, "clustered generator needs positive dim, clusters and rank");
  }
  std::mt19937_64 rng(model_seed);
  std::uniform_real_distribution<float> center(spec.center_low, spec.center_high);
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  const float scale = spec.spread / std::sqrt(float(spec.intrinsic_dim));

  centers_.resize(std::size_t(spec.clusters) * spec.dim);
  for (float& c : centers_) c = center(rng);
  bases_.resize(std::size_t(spec.clusters) * spec.dim * spec.intrinsic_dim);
  for (float& b : bases_) b = gauss(rng) * scale;
}

FeatureStore ClusteredGenerator::sample(std::size_t n, std::uint64_t stream_seed, Metric metric) const {
  std::mt19937_64 rng(stream_seed);
  std::uniform_int_distribution<std::uint32_t> cluster(0, spec_.clusters - 1);
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  const std::size_t dim = spec_.dim, rank = spec_.intrinsic_dim;

  std::vector<float> rows(n * dim);
  std::vector<float> latent(rank);
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint32_t c = cluster(rng);
    for (float& z : latent) z = gauss(rng);
    const float* center = centers_.data() + std::size_t(c) * dim;
    const float* basis = bases_.data() + std::size_t(c) * dim * rank;
    float* out = rows.data() + r * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      float x = center[i] + spec_.noise * gauss(rng);
      for (std::size_t j = 0; j < rank; ++j) x += basis[i * rank + j] * latent[j];
      if (spec_.quantize) x = std::clamp(std::round(x), 0.0f, 255.0f);
      out[i] = x;
    }
  }
  return FeatureStore(spec_.dim, metric, std::move(rows));
}

ClusteredGenerator sift_like_generator() { return ClusteredGenerator(ClusteredSpec{}, 0x5EED'0128ULL); }

FeatureStore make_uniform(std::size_t n, std::uint32_t dim, std::uint64_t seed, float low, float high,
                          Metric metric) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(low, high);
  std::vector<float> rows(n * dim);
  for (float& x : rows) x = dist(rng);
  return FeatureStore(dim, metric, std::move(rows));
}

}  // namespace deg
