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
// Acceptance suite. Runs every criterion (or those named on the command
// line), prints one PASS/FAIL line each and exits non-zero on any failure.
// `--known-failure N` still runs and reports criterion N but keeps its
// failure out of the exit status.
//
// SIFT criteria read sift_base.fvecs and sift_query.fvecs from $DEG_SIFT_DIR
// when set; otherwise they use the SIFT-like synthetic generator.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "deg/analysis.hpp"
#include "deg/bench.hpp"
#include "deg/construction.hpp"
#include "deg/error.hpp"
#include "deg/io.hpp"
#include "deg/optimization.hpp"
#include "deg/search.hpp"
#include "deg/synthetic.hpp"
#include "oracles.hpp"

namespace {

using namespace deg;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

void log(const std::string& line) {
  std::fprintf(stderr, "    %s\n", line.c_str());
  std::fflush(stderr);
}

// ---------------------------------------------------------------------------
// Data

struct SiftData {
  FeatureStore base;
  FeatureStore queries;
  std::string source;
};

const SiftData& sift() {
  static const SiftData data = [] {
    if (const char* dir = std::getenv("DEG_SIFT_DIR")) {
      const std::filesystem::path root(dir);
      return SiftData{read_fvecs(root / "sift_base.fvecs"), read_fvecs(root / "sift_query.fvecs", Metric::SquaredEuclidean, 1000),
                      "SIFT1M from " + root.string()};
    }
    const ClusteredGenerator gen = sift_like_generator();
    return SiftData{gen.sample(100'000, 1), gen.sample(1000, 2), "synthetic SIFT-like data"};
  }();
  return data;
}

const FeatureStore& sift_10k() {
  static const FeatureStore rows = subsample(sift().base, 10'000, 10).store;
  return rows;
}

const DegGraph& sift_10k_graph() {
  static const DegGraph graph = [] {
    const auto start = Clock::now();
    DegGraph g = build(sift_10k(), BuildParams::sift());
    log(fmt("built 10k graph from %s in %.1f s", sift().source.c_str(),
            std::chrono::duration<double>(Clock::now() - start).count()));
    return g;
  }();
  return graph;
}

BuildParams params_for(std::uint32_t d) {
  BuildParams p;
  p.degree = d;
  p.k_ext = 2 * d;
  p.opt.k = d;
  return p;
}

// Lean settled-graph audit used after every insertion: degree, sortedness,
// symmetry via binary search, loop-freedom, edge total and BFS connectivity.
std::size_t audit_violations(const DegGraph& g) {
  const std::uint32_t d = g.edges_per_vertex();
  std::size_t violations = 0, endpoints = 0;
  for (VertexId v = 0; v < g.size(); ++v) {
    const auto ids = g.neighbor_ids(v);
    endpoints += ids.size();
    if (ids.size() != d) ++violations;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == v || (i > 0 && ids[i - 1] >= ids[i])) ++violations;
      const auto back = g.neighbor_ids(ids[i]);
      if (!std::binary_search(back.begin(), back.end(), v)) ++violations;
    }
  }
  if (endpoints != g.size() * d || g.edge_count() * 2 != g.size() * d) ++violations;
  if (oracle::bfs_reach(g) != g.size()) ++violations;
  return violations;
}

double mean_recall(const DegGraph& g, const FeatureStore& queries, const GroundTruth& truth, SearchParams params,
                   double* mean_checked = nullptr) {
  const VertexId seed = median_seed(g);
  double recall = 0.0, checked = 0.0;
  for (VertexId q = 0; q < queries.size(); ++q) {
    const SearchResult r = range_search(g, std::span(&seed, 1), queries.row(q), params);
    recall += recall_at_k(r.ids(), truth[q], params.k);
    checked += double(r.checked_count);
  }
  if (mean_checked) *mean_checked = checked / double(queries.size());
  return recall / double(queries.size());
}

// ---------------------------------------------------------------------------
// Criteria

Outcome structural_invariants() {
  std::size_t builds = 0, audits = 0, violations = 0;
  for (std::uint32_t d : {4u, 8u, 30u}) {
    for (std::size_t n : {std::size_t(d) + 1, std::size_t(100), std::size_t(2000)}) {
      build(oracle::random_store(n, 16, 1000 + d + n), params_for(d), [&](const DegGraph& g, std::size_t) {
        violations += audit_violations(g);
        ++audits;
      });
      ++builds;
    }
  }
  return {violations == 0, fmt("%zu builds, %zu audits, %zu violations", builds, audits, violations)};
}

Outcome refinement_soundness() {
  DegGraph g = build(oracle::random_store(2000, 16, 2), params_for(8));
  const OptimizeParams opt{16, 0.001f, 5, GainMetric::Raw};
  std::mt19937_64 rng(2024);
  double weight = total_edge_weight(g);
  const double start_weight = weight;
  std::size_t unsettled = 0, increases = 0, commits = 0;
  for (int i = 0; i < 10'000; ++i) {
    const DynamicStepReport step = dynamic_edge_optimization(g, opt, rng);
    commits += step.commits;
    if (!verify_settled(g).ok()) ++unsettled;
    const double now = total_edge_weight(g);
    if (now > weight * (1.0 + 1e-6)) ++increases;
    weight = now;
  }
  return {unsettled == 0 && increases == 0,
          fmt("10000 iterations, %zu commits, %zu unsettled, %zu weight increases, total weight %.4g -> %.4g", commits,
              unsettled, increases, start_weight, weight)};
}

Outcome cut_set_lemma() {
  const DegGraph small = build(oracle::random_store(12, 16, 3), params_for(4));
  const CutBoundReport bound = verify_cut_bound(small);

  const DegGraph g = build(oracle::random_store(100, 16, 4), params_for(4));
  std::mt19937_64 rng(3);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<VertexId> ids(g.size());
    std::iota(ids.begin(), ids.end(), VertexId{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(1 + rng() % (g.size() - 1));
    if (cut_set_size(g, ids) != oracle::crossing_edges(g, ids)) ++mismatches;
  }
  return {bound.ok() && mismatches == 0,
          fmt("%zu subsets enumerated, %zu bound violations; 1000 random subsets, %zu formula mismatches",
              bound.subsets_checked, bound.violations, mismatches)};
}

Outcome oracle_equivalence() {
  const DegGraph g = build(oracle::random_store(500, 16, 5), params_for(8));
  const FeatureStore queries = oracle::random_store(50, 16, 6);
  const VertexId seed = median_seed(g);
  std::size_t mismatches = 0;
  for (VertexId q = 0; q < queries.size(); ++q) {
    const SearchResult r = range_search(g, std::span(&seed, 1), queries.row(q), {500, 10.0f, 0});
    if (r.entries != oracle::knn(g.features(), queries.row(q), 500)) ++mismatches;
  }
  return {mismatches == 0, fmt("50 queries, k=500, eps=10: %zu rankings differ from brute force", mismatches)};
}

Outcome search_quality() {
  const DegGraph& g = sift_10k_graph();
  const FeatureStore& queries = sift().queries;
  const GroundTruth truth = compute_ground_truth(g.features(), queries, 10);
  const double cap = 0.2 * double(g.size());
  std::string trace;
  bool pass = false;
  for (float eps : {0.0f, 0.02f, 0.05f, 0.1f, 0.15f, 0.2f, 0.3f, 0.5f}) {
    double checked = 0.0;
    const double recall = mean_recall(g, queries, truth, {10, eps, 0}, &checked);
    trace += fmt(" eps=%.2f:%.4f/%.0f", eps, recall, checked);
    if (recall >= 0.99) {
      pass = checked <= cap;
      trace += fmt(" -> first eps at recall>=0.99 checks %.1f%% of |V|", 100.0 * checked / double(g.size()));
      break;
    }
  }
  return {pass, "recall@10/mean checked:" + trace};
}

Outcome exploration_protocol() {
  const DegGraph& g = sift_10k_graph();
  const ExploreSet set = make_explore_set(g, 1000, 100, 6);
  BenchOptions options;
  options.k = 100;
  options.repetitions = 1;
  options.eps_sweep = {0.0f, 0.02f, 0.05f, 0.1f, 0.15f, 0.2f, 0.3f};
  const auto rows = explore_bench(g, set, options);
  bool monotone = true, reached = false;
  std::string trace;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    trace += fmt(" %.2f:%.4f", rows[i].eps, rows[i].recall);
    if (i > 0 && rows[i].recall < rows[i - 1].recall) monotone = false;
    if (rows[i].recall >= 0.95) reached = true;
  }
  return {monotone && reached, fmt("recall@100 by eps:%s; reached 0.95: %s, non-decreasing: %s", trace.c_str(),
                                   reached ? "yes" : "no", monotone ? "yes" : "no")};
}

Outcome random_graph_refinement() {
  const FeatureStore rows = subsample(sift().base, 5000, 7).store;
  const FeatureStore& queries = sift().queries;
  const GroundTruth truth = compute_ground_truth(rows, queries, 10);
  const BuildParams p = BuildParams::sift();
  DegGraph g = make_random_regular_graph(rows, p.degree, 7);
  const SearchParams budgeted{10, 0.1f, std::size_t(0.02 * double(g.size()))};
  const double recall_before = mean_recall(g, queries, truth, budgeted);
  std::mt19937_64 rng(7);
  const RefinementReport report = refine_for(g, {40'000, std::nullopt}, p.opt, rng);
  const double recall_after = mean_recall(g, queries, truth, budgeted);
  const bool settled = verify_settled(g).ok();
  return {settled && report.and_after < report.and_before && recall_after > recall_before,
          fmt("%llu iterations, %llu commits; AND %.1f -> %.1f; recall@10 at %zu checked %.4f -> %.4f; settled %s",
              static_cast<unsigned long long>(report.iterations), static_cast<unsigned long long>(report.commits),
              report.and_before, report.and_after, budgeted.max_checked, recall_before, recall_after,
              settled ? "yes" : "no")};
}

Outcome scaling_shape() {
  ScalingOptions options;
  options.sizes = {10'000, 50'000, 100'000};
  options.target_recall = 0.99;
  options.k = 10;
  options.params = BuildParams::sift();
  options.seed = 8;
  options.repetitions = 3;
  const auto rows = scaling_bench(sift().base, sift().queries, options, [](std::string_view line) {
    log(std::string(line));
  });
  std::string trace;
  bool reached = true;
  for (const ScalingRow& r : rows) {
    trace += fmt(" n=%zu:%.4fms@eps=%.3f(recall %.4f, checked %.0f, build %.0fs)", r.n, r.search_ms_per_query, r.eps,
                 r.recall, r.mean_checked, r.build_seconds);
    reached = reached && r.reached_target;
  }
  const double ratio = rows.back().search_ms_per_query / rows.front().search_ms_per_query;
  return {reached && ratio < 4.0, fmt("%s; growth 10k->100k %.2fx", trace.c_str(), ratio)};
}

Outcome stats_parity() {
  const DegGraph g = build(subsample(sift().base, 2000, 9).store, BuildParams::sift());
  StatsOptions options;
  options.explore_exact_limit = g.size();
  options.quality_exact_limit = g.size();
  const GraphStats s = graph_stats(g, options);
  const std::uint32_t d = g.edges_per_vertex();
  const bool pass = s.min_out_degree == d && s.max_out_degree == d && s.min_in_degree == d && s.max_in_degree == d &&
                    s.source_count == 0 && s.search_reach == 1.0 && s.explore_reach == 1.0 &&
                    !s.explore_reach_sampled;
  std::ostringstream table;
  write_stats_table(table, s, "deg30");
  std::string row = table.str().substr(table.str().find('\n') + 1);
  row.pop_back();
  return {pass, "stats row: " + row};
}

Outcome persistence() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("deg_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const DegGraph g = build(oracle::random_store(1000, 16, 10), params_for(8));
  save_graph(g, dir / "g.deg", true);
  save_graph(g, dir / "light.deg", false);
  const DegGraph back = load_graph(dir / "g.deg");
  const bool round_trip = back == g && serialize_graph(back) == read_file(dir / "g.deg");
  const auto with = fs::file_size(dir / "g.deg");
  const auto without = fs::file_size(dir / "light.deg");
  const bool size_ok = with - without == g.size() * g.edges_per_vertex() * 4;

  const auto bytes = read_file(dir / "g.deg");
  std::size_t silent = 0, tried = 0;
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t len = trial < 64 ? std::size_t(trial) : rng() % bytes.size();
    ++tried;
    try {
      parse_graph(std::span(bytes.data(), len));
      ++silent;
    } catch (const Error&) {
    }
  }
  // And through the file path for a few lengths.
  for (std::size_t len : {std::size_t(0), std::size_t(25), bytes.size() / 2, bytes.size() - 1}) {
    write_file(dir / "cut.deg", std::span(bytes.data(), len));
    ++tried;
    try {
      load_graph(dir / "cut.deg");
      ++silent;
    } catch (const Error&) {
    }
  }
  fs::remove_all(dir);
  return {round_trip && size_ok && silent == 0,
          fmt("round trip %s; weightless %llu bytes smaller (expected %zu); %zu truncations, %zu loaded silently",
              round_trip ? "bit-exact" : "DIFFERS", static_cast<unsigned long long>(with - without),
              g.size() * g.edges_per_vertex() * 4, tried, silent)};
}

Outcome gq_and_sanity() {
  const DegGraph k5 = oracle::graph_with_edges(oracle::random_store(5, 16, 11), 4, oracle::complete_edges(5));
  const double gq_k5 = graph_quality(k5);

  // a, b, c, e form a unit-ish rectangle; f and g sit far left and right.
  // Before the swap the non-edges are {a,e}, {b,c}, {f,g}; the swap replaces
  // (a,b), (c,e) with (a,e), (b,c).
  const FeatureStore points(2, Metric::SquaredEuclidean, {0, 0, 2, 0, 2, 1, 0, 1, -10, 0.5f, 11, 0.5f});
  enum : VertexId { a, b, c, e, f, g };
  DegGraph graph = oracle::graph_with_edges(
      points, 4, {{a, b}, {a, c}, {a, f}, {a, g}, {b, e}, {b, f}, {b, g}, {c, e}, {c, f}, {c, g}, {e, f}, {e, g}});
  const double gq_before = graph_quality(graph);
  const double and_before = average_neighbor_distance(graph);
  graph.remove_edge(a, b);
  graph.remove_edge(c, e);
  graph.add_edge(a, e, graph.distance(a, e));
  graph.add_edge(b, c, graph.distance(b, c));
  const double gq_after = graph_quality(graph);
  const double and_after = average_neighbor_distance(graph);
  const bool settled = verify_settled(graph).ok();
  return {gq_k5 == 1.0 && gq_before == gq_after && and_after != and_before && settled,
          fmt("K5 GQ %.6f; swap GQ %.6f -> %.6f, AND %.6f -> %.6f", gq_k5, gq_before, gq_after, and_before,
              and_after)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "structural invariants", 60, structural_invariants},
      {2, "refinement soundness", 120, refinement_soundness},
      {3, "cut-set lemma", 30, cut_set_lemma},
      {4, "oracle equivalence at saturation", 10, oracle_equivalence},
      {5, "search quality", 600, search_quality},
      {6, "exploration protocol", 300, exploration_protocol},
      {7, "random-graph refinement", 900, random_graph_refinement},
      {8, "scaling shape", 1800, scaling_shape},
      {9, "graph-stats parity", 60, stats_parity},
      {10, "persistence", 30, persistence},
      {11, "GQ/AND sanity", 1, gq_and_sanity},
  };

  std::vector<int> selected, known;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--known-failure" && i + 1 < argc) {
      known.push_back(std::atoi(argv[++i]));
    } else {
      selected.push_back(std::atoi(argv[i]));
    }
  }

  int failures = 0, known_failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    std::fprintf(stderr, "running %d. %s\n", c.id, c.name);
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    // Shared fixtures (the 10k graph) are charged to the first criterion that needs them.
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    const bool is_known = std::find(known.begin(), known.end(), c.id) != known.end();
    if (!pass) ++(is_known ? known_failures : failures);
    std::printf("%s %2d. %s: %s (%.1f s, limit %.0f s%s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : ", EXCEEDED",
                !pass && is_known ? " [known failure]" : "");
    std::fflush(stdout);
  }
  if (failures == 0 && known_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed, %d known failures\n", failures, known_failures);
  }
  return failures == 0 ? 0 : 1;
}
