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

#include <tuple>
#include <vector>

#include "deg/analysis.hpp"
#include "deg/construction.hpp"
#include "deg/error.hpp"
#include "oracles.hpp"

namespace deg {
namespace {

BuildParams params_for(std::uint32_t d, SelectionScheme scheme = SelectionScheme::LongestEdge, bool mrng = true) {
  BuildParams p;
  p.degree = d;
  p.k_ext = 2 * d;
  p.opt.k = d;
  p.scheme = scheme;
  p.use_mrng = mrng;
  return p;
}

// Brute-force lune test over every other vertex.
bool mrng_oracle(const DegGraph& g, VertexId a, VertexId b) {
  const double ab = g.features().distance(a, b);
  for (VertexId u = 0; u < g.size(); ++u) {
    if (u == a || u == b || !g.has_edge(a, u) || !g.has_edge(b, u)) continue;
    if (ab > std::max(g.edge_weight(a, u), g.edge_weight(b, u))) return false;
  }
  return true;
}

class BuildInvariants
    : public ::testing::TestWithParam<std::tuple<std::uint32_t, SelectionScheme, bool, Metric>> {};

TEST_P(BuildInvariants, EveryIntermediateGraphIsSettled) {
  const auto [d, scheme, mrng, metric] = GetParam();
  for (std::uint64_t seed : {1u, 2u}) {
    FeatureStore data = oracle::random_store(d + 60, 5, seed * 31 + d, metric);
    std::size_t audits = 0;
    const DegGraph g = build(std::move(data), params_for(d, scheme, mrng), [&](const DegGraph& partial, std::size_t) {
      const auto problems = oracle::audit(partial);
      ASSERT_TRUE(problems.empty()) << "after " << partial.size() << " vertices: " << problems.front();
      ++audits;
    });
    EXPECT_EQ(audits, 60u);
    EXPECT_EQ(g.edge_count(), g.size() * d / 2);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Schemes, BuildInvariants,
    ::testing::Combine(::testing::Values(4u, 6u, 10u),
                       ::testing::Values(SelectionScheme::ClosestToNew, SelectionScheme::ShortestEdge,
                                         SelectionScheme::LongestEdge, SelectionScheme::LargestReduction),
                       ::testing::Bool(), ::testing::Values(Metric::SquaredEuclidean, Metric::Angular)));

TEST(Build, SmallestDatasetIsCompleteGraph) {
  const DegGraph g = build(oracle::random_store(5, 3, 1), params_for(4));
  EXPECT_EQ(g.edge_count(), 10u);
  for (VertexId v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), 4u);
}

TEST(Build, DeterministicForSameInput) {
  const DegGraph a = build(oracle::random_store(300, 8, 7), params_for(8));
  const DegGraph b = build(oracle::random_store(300, 8, 7), params_for(8));
  EXPECT_TRUE(a == b);
}

TEST(Build, ParameterErrors) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code([] { build(oracle::random_store(10, 2, 1), params_for(5)); }), ErrorCode::OddOrTinyDegree);
  EXPECT_EQ(code([] { build(oracle::random_store(4, 2, 1), params_for(4)); }), ErrorCode::DatasetTooSmall);
  BuildParams p = params_for(8);
  p.k_ext = 7;
  EXPECT_EQ(code([&] { build(oracle::random_store(20, 2, 1), p); }), ErrorCode::InvalidArgument);
}

TEST(ExtendGraph, RejectsTooSmallOrWiredVertex) {
  DegGraph g = oracle::graph_with_edges(oracle::random_store(7, 2, 3), 4, oracle::complete_edges(5));
  const BuildParams p = params_for(4);
  // Vertex 0 already has edges.
  EXPECT_THROW(extend_graph(g, 0, p), Error);
  DegGraph tiny(oracle::random_store(5, 2, 3), 4);
  for (int i = 0; i < 5; ++i) tiny.add_vertex();
  try {
    extend_graph(tiny, 4, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GraphTooSmall);
  }
}

TEST(ExtendGraph, ReportAccountsForEveryEdge) {
  const std::uint32_t d = 6;
  DegGraph g = oracle::graph_with_edges(oracle::random_store(200, 4, 9), d, oracle::complete_edges(d + 1));
  BuildParams p = params_for(d);
  p.optimize_new_edges = false;
  for (VertexId v = d + 1; v < 200; ++v) {
    const ExtendReport r = extend_graph(g, v, p);
    EXPECT_EQ(r.removed_edges, d / 2);
    EXPECT_EQ(r.added_edges, d);
    EXPECT_LE(r.mrng_neighbors, d);
    EXPECT_EQ(r.optimize_calls, 0u);
  }
  EXPECT_TRUE(oracle::audit(g).empty());
}

TEST(ExtendGraph, WideningFindsNeighborsWhenSearchIsTooNarrow) {
  // k_ext == d with mrng on and scheme A on clustered duplicates forces the
  // pool to run dry now and then; the graph must still settle.
  std::vector<float> rows;
  for (int i = 0; i < 80; ++i) rows.push_back(float(i % 4));
  DegGraph g = build(FeatureStore(1, Metric::SquaredEuclidean, rows), params_for(4, SelectionScheme::ClosestToNew));
  EXPECT_TRUE(oracle::audit(g).empty());
}

TEST(CheckMrng, AgreesWithBruteForce) {
  const DegGraph g = build(oracle::random_store(150, 3, 5), params_for(8));
  for (VertexId a = 0; a < g.size(); ++a) {
    for (VertexId b : g.neighbor_ids(a)) EXPECT_EQ(check_mrng(g, a, b), mrng_oracle(g, a, b));
    const VertexId other = (a * 13 + 1) % g.size();
    if (other != a) EXPECT_EQ(check_mrng(g, a, other), mrng_oracle(g, a, other));
  }
}

TEST(CheckMrng, HandInstance) {
  // a=(0,0) b=(4,0) u=(2,1): |ab|^2 = 16 > max(5, 5) so u lies in the lune.
  FeatureStore store(2, Metric::SquaredEuclidean, {0, 0, 4, 0, 2, 1, 2, 9});
  const DegGraph g = oracle::graph_with_edges(std::move(store), 4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
  EXPECT_FALSE(check_mrng(g, 0, 1));
  const DegGraph h = oracle::graph_with_edges(FeatureStore(2, Metric::SquaredEuclidean, {0, 0, 4, 0, 2, 1, 2, 9}), 4,
                                              {{0, 3}, {1, 3}});
  EXPECT_TRUE(check_mrng(h, 0, 1));
  const std::vector<ScoredId> tentative{{2, 5.0f}};
  EXPECT_FALSE(check_mrng_tentative(g, 1, 16.0f, tentative));
  EXPECT_TRUE(check_mrng_tentative(h, 1, 16.0f, tentative));
}

TEST(SelectEdgeToBreak, SchemesPickExpectedNeighbor) {
  // b=0 at origin with neighbors 1..4; the new vertex sits at (10, 0).
  FeatureStore store(2, Metric::SquaredEuclidean, {0, 0, 1, 0, 0, 3, -2, 0, 0, -1.5f});
  const DegGraph g = oracle::graph_with_edges(std::move(store), 4, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const std::vector<float> v{10, 0};
  const std::vector<VertexId> none;
  // Distances to v: 1 -> 81, 2 -> 109, 3 -> 144, 4 -> 102.25. Edge weights: 1, 9, 4, 2.25. delta(v,b) = 100.
  EXPECT_EQ(select_edge_to_break(g, 0, v, none, SelectionScheme::ClosestToNew), 1u);
  EXPECT_EQ(select_edge_to_break(g, 0, v, none, SelectionScheme::ShortestEdge), 1u);
  EXPECT_EQ(select_edge_to_break(g, 0, v, none, SelectionScheme::LongestEdge), 2u);
  // Reductions w - 100 - delta(v, n): -180, -200, -240, -200. Ties go to the lower id.
  EXPECT_EQ(select_edge_to_break(g, 0, v, none, SelectionScheme::LargestReduction), 1u);
  const std::vector<VertexId> no_one{1};
  EXPECT_EQ(select_edge_to_break(g, 0, v, no_one, SelectionScheme::LargestReduction), 2u);
  const std::vector<VertexId> all{1, 2, 3, 4};
  EXPECT_THROW(select_edge_to_break(g, 0, v, all, SelectionScheme::LongestEdge), Error);
}

TEST(SchemeNames, RoundTrip) {
  for (char c : {'A', 'B', 'C', 'D'}) {
    const auto s = parse_scheme(std::string(1, c));
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(scheme_letter(*s), c);
  }
  EXPECT_FALSE(parse_scheme("E").has_value());
}

TEST(Presets, MatchPublishedParameters) {
  const BuildParams s = BuildParams::sift();
  EXPECT_EQ(std::tie(s.degree, s.k_ext, s.opt.k, s.opt.iterations), std::make_tuple(30u, 60u, 30u, 5u));
  EXPECT_FLOAT_EQ(s.eps_ext, 0.2f);
  EXPECT_FLOAT_EQ(s.opt.eps, 0.001f);
  const BuildParams a = BuildParams::audio();
  EXPECT_EQ(std::tie(a.degree, a.k_ext, a.opt.k), std::make_tuple(20u, 40u, 20u));
  EXPECT_FLOAT_EQ(a.eps_ext, 0.3f);
  EXPECT_FLOAT_EQ(BuildParams::enron().eps_ext, 0.3f);
  EXPECT_EQ(BuildParams::glove().k_ext, 30u);
}

}  // namespace
}  // namespace deg
