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
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "deg/error.hpp"
#include "deg/metric.hpp"
#include "oracles.hpp"

namespace deg {
namespace {

std::vector<float> random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<float> normal(0.0f, 3.0f);
  std::vector<float> v(dim);
  for (float& x : v) x = normal(rng);
  return v;
}

TEST(Metric, KernelsAgreeWithDoublePrecisionOracle) {
  std::mt19937_64 rng(11);
  for (std::size_t dim : {1u, 3u, 7u, 8u, 9u, 16u, 31u, 128u, 960u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_vector(dim, rng);
      const auto b = random_vector(dim, rng);
      const double l2 = oracle::l2(a, b);
      EXPECT_NEAR(distance(Metric::SquaredEuclidean, a, b), l2, 1e-5 * l2 + 1e-6) << "dim " << dim;
      EXPECT_NEAR(distance(Metric::Angular, a, b), oracle::angular(a, b), 1e-5) << "dim " << dim;
    }
  }
}

TEST(Metric, SelfDistanceIsZeroAndSymmetric) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_vector(37, rng);
    const auto b = random_vector(37, rng);
    EXPECT_EQ(distance(Metric::SquaredEuclidean, a, a), 0.0f);
    EXPECT_NEAR(distance(Metric::Angular, a, a), 0.0f, 1e-6);
    EXPECT_EQ(distance(Metric::SquaredEuclidean, a, b), distance(Metric::SquaredEuclidean, b, a));
    EXPECT_EQ(distance(Metric::Angular, a, b), distance(Metric::Angular, b, a));
    EXPECT_GE(distance(Metric::Angular, a, b), 0.0f);
  }
}

TEST(Metric, HandComputedValues) {
  const std::vector<float> a{0, 0}, b{3, 4}, c{1, 0}, d{0, 2}, e{-2, 0};
  EXPECT_EQ(distance(Metric::SquaredEuclidean, a, b), 25.0f);
  EXPECT_FLOAT_EQ(distance(Metric::Angular, c, d), 1.0f);
  EXPECT_FLOAT_EQ(distance(Metric::Angular, c, e), 2.0f);
}

TEST(Metric, AngularZeroVectors) {
  const std::vector<float> zero{0, 0, 0}, other{1, 2, 3};
  EXPECT_EQ(distance(Metric::Angular, zero, zero), 0.0f);
  EXPECT_EQ(distance(Metric::Angular, zero, other), 1.0f);
  EXPECT_EQ(distance(Metric::Angular, other, zero), 1.0f);
}

TEST(Metric, DimensionMismatchThrows) {
  const std::vector<float> a{1, 2}, b{1, 2, 3};
  try {
    distance(Metric::SquaredEuclidean, a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Metric, ParseAndPrint) {
  EXPECT_EQ(parse_metric("l2"), Metric::SquaredEuclidean);
  EXPECT_EQ(parse_metric("angular"), Metric::Angular);
  EXPECT_FALSE(parse_metric("hamming").has_value());
  EXPECT_EQ(to_string(Metric::SquaredEuclidean), "l2");
  EXPECT_EQ(to_string(Metric::Angular), "angular");
}

TEST(FeatureStore, RowsAndErrors) {
  EXPECT_THROW(FeatureStore(0, Metric::SquaredEuclidean), Error);
  EXPECT_THROW(FeatureStore(3, Metric::SquaredEuclidean, std::vector<float>(7)), Error);

  FeatureStore store(2, Metric::SquaredEuclidean);
  const std::vector<float> r0{1, 1}, r1{4, 5};
  EXPECT_EQ(store.append_vector(r0), 0u);
  EXPECT_EQ(store.append_vector(r1), 1u);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.distance(0, 1), 25.0f);
  EXPECT_EQ(store.distance_unchecked(VertexId{0}, VertexId{1}), 25.0f);
  EXPECT_EQ(store.row(1)[1], 5.0f);

  const std::vector<float> wrong{1, 2, 3};
  try {
    store.append_vector(wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  try {
    store.row(2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVertex);
  }
}

TEST(Error, MessageCarriesCodeName) {
  const Error e(ErrorCode::DegreeOverflow, "vertex 3");
  EXPECT_EQ(e.code(), ErrorCode::DegreeOverflow);
  EXPECT_NE(std::string(e.what()).find("DegreeOverflow"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("vertex 3"), std::string::npos);
}

}  // namespace
}  // namespace deg
