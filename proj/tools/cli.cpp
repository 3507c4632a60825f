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
#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "deg/analysis.hpp"
#include "deg/bench.hpp"
#include "deg/construction.hpp"
#include "deg/error.hpp"
#include "deg/io.hpp"
#include "deg/metric.hpp"
#include "deg/optimization.hpp"
#include "deg/search.hpp"
#include "deg/synthetic.hpp"

namespace deg::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct BuildFlags {
  std::uint32_t degree = 30;
  std::uint32_t k_ext = 60;
  float eps_ext = 0.2f;
  std::string scheme = "C";
  std::string mrng = "on";
};

struct OptFlags {
  std::uint32_t k_opt = 30;
  float eps_opt = 0.001f;
  std::uint32_t i_opt = 5;
  std::string gain = "raw";

  OptimizeParams params() const {
    return OptimizeParams{k_opt, eps_opt, i_opt, gain == "sqrt" ? GainMetric::Sqrt : GainMetric::Raw};
  }
};

const CLI::Validator kEvenDegree(
    [](std::string& text) -> std::string {
      const long value = std::stol(text);
      if (value < 4 || value % 2 != 0) return "degree must be even and at least 4, got " + text;
      return {};
    },
    "EVEN>=4");

void add_degree_flag(CLI::App* cmd, std::uint32_t& degree) {
  cmd->add_option("--degree,-d", degree, "Edges per vertex")->check(kEvenDegree)->capture_default_str();
}

void add_opt_flags(CLI::App* cmd, OptFlags& f) {
  cmd->add_option("--k-opt", f.k_opt, "Search size during edge optimization")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--eps-opt", f.eps_opt, "Search eps during edge optimization")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--i-opt", f.i_opt, "Swap iterations per optimization")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--gain-metric", f.gain, "Gain accounting")->check(CLI::IsMember({"raw", "sqrt"}))
      ->capture_default_str();
}

void add_build_flags(CLI::App* cmd, BuildFlags& b, OptFlags& o) {
  add_degree_flag(cmd, b.degree);
  cmd->add_option("--k-ext", b.k_ext, "Search size during extension")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--eps-ext", b.eps_ext, "Search eps during extension")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--scheme", b.scheme, "Edge selection scheme")->check(CLI::IsMember({"A", "B", "C", "D"}))
      ->capture_default_str();
  cmd->add_option("--mrng", b.mrng, "Prefer MRNG-conform neighbors")->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  add_opt_flags(cmd, o);
}

BuildParams to_params(const BuildFlags& b, const OptFlags& o) {
  BuildParams p;
  p.degree = b.degree;
  p.k_ext = b.k_ext;
  p.eps_ext = b.eps_ext;
  p.scheme = *parse_scheme(b.scheme);
  p.use_mrng = b.mrng == "on";
  p.opt = o.params();
  return p;
}

void add_metric_flag(CLI::App* cmd, std::string& metric) {
  cmd->add_option("--metric", metric, "Distance for the base vectors")->check(CLI::IsMember({"l2", "angular"}))
      ->capture_default_str();
}

std::optional<std::size_t> limit_of(std::size_t limit) {
  return limit == 0 ? std::nullopt : std::optional<std::size_t>(limit);
}

/// Writes CSV either to --out or to the caller's stream.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }
  void finish(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw Error(ErrorCode::IoError, "write failed for " + (path.empty() ? "stdout" : path));
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic Exploration Graph index tool"};
  app.require_subcommand(1);

  std::string metric_name = "l2";
  std::string base_path, query_path, graph_path, gt_path, out_path;
  std::size_t limit = 0;
  std::uint64_t seed = 1;
  BuildFlags build_flags;
  OptFlags opt_flags;
  std::uint32_t k = 10;
  std::vector<float> eps_sweep = default_eps_sweep();
  std::uint32_t repetitions = 3;
  std::size_t max_checked = 0;
  std::function<int()> action;

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic fvecs dataset");
  std::string kind = "sift";
  std::size_t gen_n = 10000;
  std::uint32_t gen_dim = 16;
  generate->add_option("--kind", kind, "sift (clustered, 128-d bytes) or uniform")
      ->check(CLI::IsMember({"sift", "uniform"}))->capture_default_str();
  generate->add_option("--n", gen_n, "Rows")->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--dim", gen_dim, "Dimension for uniform data")->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seed", seed, "Stream seed")->capture_default_str();
  generate->add_option("--out", out_path, "Output fvecs file")->required();
  generate->callback([&] {
    action = [&] {
      const FeatureStore store =
          kind == "sift" ? sift_like_generator().sample(gen_n, seed) : make_uniform(gen_n, gen_dim, seed);
      write_fvecs(out_path, store);
      fmt::print(err, "wrote {} rows of dimension {} to {}\n", store.size(), store.dim(), out_path);
      return kExitOk;
    };
  });

  // build
  auto* build_cmd = app.add_subcommand("build", "Build a graph from an fvecs base set");
  build_cmd->add_option("--base", base_path, "Base vectors (fvecs)")->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--out", out_path, "Output graph file")->required();
  build_cmd->add_option("--limit", limit, "Use only the first N rows (0 = all)");
  build_cmd->add_option("--seed", seed, "Accepted for symmetry; construction is deterministic");
  add_metric_flag(build_cmd, metric_name);
  add_build_flags(build_cmd, build_flags, opt_flags);
  build_cmd->callback([&] {
    action = [&] {
      const BuildParams params = to_params(build_flags, opt_flags);
      params.validate();
      FeatureStore base = read_fvecs(base_path, *parse_metric(metric_name), limit_of(limit));
      const std::size_t n = base.size();
      std::size_t next_report = n / 10;
      const auto start = Clock::now();
      DegGraph graph = build(std::move(base), params, [&](const DegGraph& partial, std::size_t total) {
        const std::size_t inserted = partial.size();
        if (inserted >= next_report) {
          fmt::print(err, "inserted {}/{} ({:.1f} s)\n", inserted, total, seconds_since(start));
          next_report += std::max<std::size_t>(total / 10, 1);
        }
      });
      const double build_seconds = seconds_since(start);
      const SettledReport settled = verify_settled(graph);
      save_graph(graph, out_path);
      fmt::print(out, "n,degree,build_time_s,edges,and,settled\n");
      fmt::print(out, "{},{},{:.3f},{},{:.6g},{}\n", graph.size(), graph.edges_per_vertex(), build_seconds,
                 graph.edge_count(), average_neighbor_distance(graph), settled.ok() ? 1 : 0);
      return settled.ok() ? kExitOk : kExitFailure;
    };
  });

  // refine
  auto* refine = app.add_subcommand("refine", "Optimize an existing graph for a budget");
  std::optional<double> refine_seconds;
  std::optional<std::uint64_t> refine_iterations;
  refine->add_option("--graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  refine->add_option("--out", out_path, "Output graph file (default: overwrite --graph)");
  refine->add_option("--seconds", refine_seconds, "Time budget")->check(CLI::NonNegativeNumber);
  refine->add_option("--iterations", refine_iterations, "Iteration budget");
  refine->add_option("--seed", seed, "Random vertex selection seed")->capture_default_str();
  add_opt_flags(refine, opt_flags);
  refine->callback([&] {
    if (!refine_seconds && !refine_iterations) throw CLI::ValidationError("refine needs --seconds or --iterations");
    action = [&] {
      DegGraph graph = load_graph(graph_path);
      if (!graph.has_weights()) throw Error(ErrorCode::SearchOnlyGraph, "refinement needs edge weights");
      RefineBudget budget;
      budget.iterations = refine_iterations;
      if (refine_seconds) budget.time = std::chrono::duration<double>(*refine_seconds);
      std::mt19937_64 rng(seed);
      const auto start = Clock::now();
      const RefinementReport report = refine_for(graph, budget, opt_flags.params(), rng);
      const double elapsed = seconds_since(start);
      save_graph(graph, out_path.empty() ? graph_path : out_path);
      fmt::print(out, "iterations,optimize_calls,commits,seconds,and_before,and_after\n");
      fmt::print(out, "{},{},{},{:.3f},{:.6g},{:.6g}\n", report.iterations, report.optimize_calls, report.commits,
                 elapsed, report.and_before, report.and_after);
      return kExitOk;
    };
  });

  // random-graph
  auto* random_cmd = app.add_subcommand("random-graph", "Random connected even-regular graph over a base set");
  random_cmd->add_option("--base", base_path, "Base vectors (fvecs)")->required()->check(CLI::ExistingFile);
  random_cmd->add_option("--out", out_path, "Output graph file")->required();
  random_cmd->add_option("--limit", limit, "Use only the first N rows (0 = all)");
  random_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
  add_metric_flag(random_cmd, metric_name);
  add_degree_flag(random_cmd, build_flags.degree);
  random_cmd->callback([&] {
    action = [&] {
      FeatureStore base = read_fvecs(base_path, *parse_metric(metric_name), limit_of(limit));
      const DegGraph graph = make_random_regular_graph(std::move(base), build_flags.degree, seed);
      save_graph(graph, out_path);
      fmt::print(out, "n,degree,edges,and\n");
      fmt::print(out, "{},{},{},{:.6g}\n", graph.size(), graph.edges_per_vertex(), graph.edge_count(),
                 average_neighbor_distance(graph));
      return kExitOk;
    };
  });

  auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--eps-sweep", eps_sweep, "Comma separated eps values")->delimiter(',');
    cmd->add_option("--repetitions", repetitions, "Timing runs per eps (median reported)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--max-checked", max_checked, "Cap on checked vertices per query (0 = none)");
    cmd->add_option("--out", out_path, "CSV output (default stdout)");
  };

  // search-bench
  auto* search_cmd = app.add_subcommand("search-bench", "Recall and throughput over an eps sweep");
  bool brute_force = false;
  search_cmd->add_option("--graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  search_cmd->add_option("--queries", query_path, "Query vectors (fvecs)")->required()->check(CLI::ExistingFile);
  auto* gt_opt = search_cmd->add_option("--gt", gt_path, "Ground truth ids (ivecs)")->check(CLI::ExistingFile);
  search_cmd->add_flag("--brute-force", brute_force, "Compute ground truth by exhaustive scan")->excludes(gt_opt);
  search_cmd->add_option("--k", k, "Neighbors per query")->check(CLI::PositiveNumber)->capture_default_str();
  search_cmd->add_option("--limit", limit, "Use only the first N queries (0 = all)");
  add_sweep_flags(search_cmd);
  search_cmd->callback([&] {
    if (gt_path.empty() && !brute_force) throw CLI::ValidationError("search-bench needs --gt or --brute-force");
    action = [&] {
      const DegGraph graph = load_graph(graph_path, LoadMode::SearchOnly);
      const FeatureStore queries = read_fvecs(query_path, graph.features().metric(), limit_of(limit));
      if (queries.dim() != graph.features().dim()) {
        throw Error(ErrorCode::DimensionMismatch, fmt::format("queries have dimension {}, graph has {}",
                                                              queries.dim(), graph.features().dim()));
      }
      GroundTruth truth;
      if (brute_force) {
        const auto start = Clock::now();
        truth = compute_ground_truth(graph.features(), queries, k);
        const double elapsed = seconds_since(start);
        fmt::print(err, "brute-force scan: {} queries over {} vectors, {:.1f} qps\n", queries.size(), graph.size(),
                   elapsed > 0.0 ? double(queries.size()) / elapsed : 0.0);
      } else {
        truth = ground_truth_from_ivecs(read_ivecs(gt_path, limit_of(queries.size())), graph.features(), queries);
      }
      BenchOptions options{k, eps_sweep, repetitions, max_checked};
      const auto rows = search_bench(graph, queries, truth, options);
      CsvSink sink(out_path, out);
      write_bench_csv(sink.stream(), rows);
      sink.finish(out_path);
      return kExitOk;
    };
  });

  // explore-bench
  auto* explore_cmd = app.add_subcommand("explore-bench", "Exploration from indexed vertices over an eps sweep");
  std::size_t explore_queries = 10000;
  std::uint32_t explore_k = 1000;
  explore_cmd->add_option("--graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  explore_cmd->add_option("--k", explore_k, "Neighbors per query")->check(CLI::PositiveNumber)->capture_default_str();
  explore_cmd->add_option("--queries", explore_queries, "Number of indexed query vertices (capped at |V|)")
      ->capture_default_str();
  explore_cmd->add_option("--seed", seed, "Query selection seed")->capture_default_str();
  add_sweep_flags(explore_cmd);
  explore_cmd->callback([&] {
    action = [&] {
      const DegGraph graph = load_graph(graph_path, LoadMode::SearchOnly);
      const ExploreSet set = make_explore_set(graph, explore_queries, explore_k, seed);
      BenchOptions options{explore_k, eps_sweep, repetitions, max_checked};
      const auto rows = explore_bench(graph, set, options);
      CsvSink sink(out_path, out);
      write_bench_csv(sink.stream(), rows);
      sink.finish(out_path);
      return kExitOk;
    };
  });

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Degree, reach and quality statistics");
  std::string stats_name;
  bool no_quality = false;
  stats_cmd->add_option("--graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--name", stats_name, "Label for the table row (default: file name)");
  stats_cmd->add_option("--seed", seed, "Sampling seed for large graphs")->capture_default_str();
  stats_cmd->add_flag("--no-quality", no_quality, "Skip the graph quality column");
  stats_cmd->add_option("--out", out_path, "CSV output (default stdout)");
  stats_cmd->callback([&] {
    action = [&] {
      const DegGraph graph = load_graph(graph_path, LoadMode::SearchOnly);
      StatsOptions options;
      options.compute_quality = !no_quality;
      options.seed = seed;
      const GraphStats stats = graph_stats(graph, options);
      if (stats.quality_sampled) fmt::print(err, "graph quality estimated from sampled vertices\n");
      if (stats.explore_reach_sampled) fmt::print(err, "explore reach estimated from sampled vertices\n");
      CsvSink sink(out_path, out);
      write_stats_table(sink.stream(), stats, stats_name.empty() ? fs::path(graph_path).stem().string() : stats_name);
      sink.finish(out_path);
      return kExitOk;
    };
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check regularity, symmetry, connectivity and the cut bound");
  std::size_t cut_limit = 16;
  verify_cmd->add_option("--graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--cut-limit", cut_limit, "Enumerate cut subsets only when |V| is at most this")
      ->capture_default_str();
  verify_cmd->callback([&] {
    action = [&] {
      const DegGraph graph = load_graph(graph_path);
      const SettledReport settled = verify_settled(graph);
      fmt::print(out, "settled: {}\n", settled.ok() ? "ok" : "FAILED");
      for (const std::string& problem : settled.problems) fmt::print(out, "  {}\n", problem);
      bool ok = settled.ok();
      if (graph.size() <= cut_limit && graph.size() >= 2) {
        const CutBoundReport cut = verify_cut_bound(graph);
        fmt::print(out, "cut-bound: {} ({} subsets, {} violations)\n", cut.ok() ? "ok" : "FAILED",
                   cut.subsets_checked, cut.violations);
        ok = ok && cut.ok();
      } else {
        fmt::print(out, "cut-bound: skipped (|V|={} > {})\n", graph.size(), cut_limit);
      }
      return ok ? kExitOk : kExitFailure;
    };
  });

  // scaling
  auto* scaling_cmd = app.add_subcommand("scaling", "Build and search time across subsample sizes");
  std::vector<std::size_t> sizes;
  double target = 0.99;
  scaling_cmd->add_option("--base", base_path, "Base vectors (fvecs)")->required()->check(CLI::ExistingFile);
  scaling_cmd->add_option("--queries", query_path, "Query vectors (fvecs)")->required()->check(CLI::ExistingFile);
  scaling_cmd->add_option("--sizes", sizes, "Comma separated ascending subsample sizes")->required()->delimiter(',');
  scaling_cmd->add_option("--target", target, "Target recall")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  scaling_cmd->add_option("--k", k, "Neighbors per query")->check(CLI::PositiveNumber)->capture_default_str();
  scaling_cmd->add_option("--limit", limit, "Use only the first N queries (0 = all)");
  scaling_cmd->add_option("--seed", seed, "Subsampling seed")->capture_default_str();
  scaling_cmd->add_option("--repetitions", repetitions, "Timing runs (median reported)")->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--out", out_path, "CSV output (default stdout)");
  add_metric_flag(scaling_cmd, metric_name);
  add_build_flags(scaling_cmd, build_flags, opt_flags);
  scaling_cmd->callback([&] {
    action = [&] {
      const Metric metric = *parse_metric(metric_name);
      const FeatureStore base = read_fvecs(base_path, metric);
      const FeatureStore queries = read_fvecs(query_path, metric, limit_of(limit));
      ScalingOptions options;
      options.sizes = sizes;
      options.target_recall = target;
      options.k = k;
      options.params = to_params(build_flags, opt_flags);
      options.params.validate();
      options.seed = seed;
      options.repetitions = repetitions;
      const auto rows =
          scaling_bench(base, queries, options, [&](std::string_view line) { fmt::print(err, "{}\n", line); });
      CsvSink sink(out_path, out);
      write_scaling_csv(sink.stream(), rows);
      sink.finish(out_path);
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitFailure;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::OddOrTinyDegree ? kExitUsage
                                                                                           : kExitFailure;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
}

}  // namespace deg::cli
