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

#include "deg/construction.hpp"
#include "deg/error.hpp"
#include "oracles.hpp"

namespace deg {
namespace {

TEST(RandomRegularGraph, TenVerticesDegreeFour) {
  const DegGraph g = make_random_regular_graph(oracle::random_store(10, 2, 1), 4, 42);
  EXPECT_EQ(g.edge_count(), 20u);
  EXPECT_TRUE(oracle::audit(g).empty());
}

TEST(RandomRegularGraph, SettledAcrossSeedsAndDegrees) {
  for (std::uint32_t d : {4u, 8u, 30u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DegGraph g = make_random_regular_graph(oracle::random_store(d + 1 + 40, 3, seed), d, seed);
      const auto problems = oracle::audit(g);
      EXPECT_TRUE(problems.empty()) << "d=" << d << " seed=" << seed << ": " << problems.front();
    }
  }
}

TEST(RandomRegularGraph, CompleteGraphWhenForced) {
  const DegGraph g = make_random_regular_graph(oracle::random_store(9, 2, 1), 8, 3);
  EXPECT_EQ(g.edge_count(), 36u);
}

TEST(RandomRegularGraph, DeterministicPerSeed) {
  const DegGraph a = make_random_regular_graph(oracle::random_store(500, 4, 1), 8, 7);
  const DegGraph b = make_random_regular_graph(oracle::random_store(500, 4, 1), 8, 7);
  const DegGraph c = make_random_regular_graph(oracle::random_store(500, 4, 1), 8, 8);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a.same_adjacency(c));
}

TEST(RandomRegularGraph, InfeasibleInputs) {
  try {
    make_random_regular_graph(oracle::random_store(4, 2, 1), 4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleDegreeSequence);
  }
  EXPECT_THROW(make_random_regular_graph(oracle::random_store(10, 2, 1), 3, 1), Error);
}

}  // namespace
}  // namespace deg
