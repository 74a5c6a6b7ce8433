// Copyright 2026 the sinkscale authors
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

#include "sinkscale/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sinkscale/divergence.hpp"
#include "sinkscale/errors.hpp"
#include "sinkscale/kernels.hpp"
#include "sinkscale/matching.hpp"
#include "sinkscale/mmio.hpp"
#include "sinkscale/oracles.hpp"
#include "sinkscale/prng.hpp"
#include "sinkscale/sinkhorn.hpp"
#include "sinkscale/sparse.hpp"

namespace sinkscale {
namespace cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitBudgetExhausted = 2;
constexpr int kExitNegative = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_json_file(const ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing " + path);
}

void write_trace_csv(const IterationTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "t,phase,err1,err2,kl_row,kl_col,pot_Z\n";
  for (const TraceRecord& rec : trace.records) {
    out << rec.t << ","
        << (rec.phase == Phase::kAfterColumnScale ? "col_feasible"
                                                  : "row_feasible")
        << "," << fmt(rec.err1) << "," << fmt(rec.err2) << ","
        << fmt(rec.kl_row) << "," << fmt(rec.kl_col) << ",";
    if (rec.potential.has_value()) out << fmt(*rec.potential);
    out << "\n";
  }
  if (!out) throw IoError("failed writing " + path);
}

struct ScaleArgs {
  std::string matrix_path;
  std::vector<std::string> target_paths;
  bool uniform = false;
  std::string metric = "l1";
  double eps = 0.0;
  std::optional<double> delta;
  std::optional<std::uint64_t> max_iters;
  std::string witness_path;
  std::string trace_path;
  std::string out_path;
};

struct MatchArgs {
  std::string graph_path;
  double eps = 0.0;
  bool oracle = false;
};

struct VerifyArgs {
  std::uint64_t pairs = 0;
  std::string theta_list;
  std::vector<double> thetas;
};

int cmd_scale(const ScaleArgs& args, bool quiet, bool json_out) {
  SparseNonnegMatrix a = read_matrix_market(args.matrix_path);

  std::vector<double> r, c;
  if (args.uniform) {
    if (a.n_rows() != a.n_cols()) {
      throw NotSquare("--uniform needs a square matrix; this one is " +
                      std::to_string(a.n_rows()) + "x" +
                      std::to_string(a.n_cols()));
    }
    r.assign(a.n_rows(), 1.0);
    c.assign(a.n_cols(), 1.0);
  } else {
    r = read_target_vector(args.target_paths[0]);
    c = read_target_vector(args.target_paths[1]);
  }

  ScalingInstance instance = validate_instance(a, TargetVectors(r, c));

  std::optional<SparseNonnegMatrix> witness;
  if (!args.witness_path.empty()) {
    witness = read_matrix_market(args.witness_path);
  }

  StoppingRule rule;
  rule.metric = args.metric == "l1"   ? Metric::kL1
                : args.metric == "l2" ? Metric::kL2
                                      : Metric::kKlMarginal;
  rule.threshold = args.eps;
  if (args.max_iters.has_value()) {
    rule.max_iters = *args.max_iters;
  } else if (args.delta.has_value()) {
    rule.max_iters = iteration_budget(instance.params(), *args.delta);
  }

  RunResult result =
      run(instance, rule, witness.has_value() ? &*witness : nullptr);

  write_trace_csv(result.trace, args.trace_path);

  const char* outcome = result.outcome == Outcome::kConverged
                            ? "converged"
                            : "budget_exhausted";
  ordered_json scalers;
  scalers["schema"] = 1;
  scalers["row_scaler"] = result.state.row_scaler;
  scalers["col_scaler"] = result.state.col_scaler;
  scalers["iterations"] = result.iterations_used;
  scalers["outcome"] = outcome;
  write_json_file(scalers, args.out_path);

  if (json_out) {
    ordered_json summary;
    summary["schema"] = 1;
    summary["outcome"] = outcome;
    summary["iterations"] = result.iterations_used;
    summary["metric"] = args.metric;
    summary["threshold"] = args.eps;
    summary["final_metric"] = result.final_metric;
    summary["best_metric"] = result.best_metric;
    std::cout << summary.dump(2) << "\n";
  } else if (!quiet) {
    std::cout << outcome << " after " << result.iterations_used
              << " iterations, " << args.metric << " error "
              << fmt(result.final_metric) << " (threshold " << fmt(args.eps)
              << ")\n";
  }
  return result.outcome == Outcome::kConverged ? kExitOk
                                               : kExitBudgetExhausted;
}

int cmd_match(const MatchArgs& args, bool quiet) {
  BipartiteGraph g = read_edge_list(args.graph_path);
  DistinguisherVerdict verdict = distinguish(g, args.eps);
  const bool positive =
      verdict.kind == DistinguisherVerdict::Kind::kPerfectMatchingLikely;

  ordered_json report;
  report["schema"] = 1;
  report["verdict"] =
      positive ? "perfect_matching_likely" : "max_matching_below";
  report["bound"] = verdict.bound;
  report["iterations"] = verdict.iterations_used;
  report["err1"] = verdict.achieved_error1;
  if (args.oracle) {
    const std::size_t oracle_size = oracles::max_matching_exact(g);
    const double n = static_cast<double>(g.n_left);
    // Positive verdicts promise a matching of at least ceil(n(1-eps));
    // negative verdicts promise there is no perfect matching.
    const bool consistent =
        positive ? static_cast<double>(oracle_size) >=
                       std::ceil(n * (1.0 - args.eps))
                 : oracle_size < g.n_left;
    report["oracle_size"] = oracle_size;
    report["oracle_agrees"] = consistent;
  }
  if (!quiet) std::cout << report.dump(2) << "\n";
  return positive ? kExitOk : kExitNegative;
}

// Fixed stress pairs appended after the random sweep: spiked, boundary-tie,
// near-disjoint, shared-zero, and identical distributions.
void check_adversarial_pairs(const std::vector<double>& thetas,
                             CheckReport& report) {
  for (std::size_t n : {4, 16, 64, 100}) {
    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> q(
        n, 1.0 / static_cast<double>(n) -
               1.0 / (static_cast<double>(n - 1) *
                      std::sqrt(static_cast<double>(n))));
    q[0] = 1.0 / static_cast<double>(n) + 1.0 / std::sqrt(static_cast<double>(n));
    report.merge(check_divergence_inequalities(Distribution(p),
                                               Distribution(q), thetas));
  }
  for (double theta : thetas) {
    // q hits the set-selection boundary q = (1 + theta) p exactly.
    const double p0 = 0.5 / (1.0 + theta);
    Distribution p({p0, 1.0 - p0});
    Distribution q({0.5, 0.5});
    report.merge(check_divergence_inequalities(p, q, thetas));
  }
  Distribution near_disjoint_p({1.0 - 1e-9, 1e-9, 0.0});
  Distribution near_disjoint_q({1e-9, 1.0 - 1e-9, 0.0});
  report.merge(
      check_divergence_inequalities(near_disjoint_p, near_disjoint_q, thetas));
  Distribution zero_p({0.0, 0.5, 0.5});
  Distribution zero_q({0.25, 0.25, 0.5});
  report.merge(check_divergence_inequalities(zero_p, zero_q, thetas));
  report.merge(check_divergence_inequalities(zero_q, zero_p, thetas));
  Distribution uniform({0.25, 0.25, 0.25, 0.25});
  report.merge(check_divergence_inequalities(uniform, uniform, thetas));
}

int cmd_verify(const VerifyArgs& args, std::uint64_t seed, bool quiet) {
  for (double theta : args.thetas) theta_constants(theta);

  CheckReport report;
  if (args.pairs > 0) {
    for (std::uint64_t idx = 0; idx < args.pairs; ++idx) {
      SplitMix64 rng = derive_stream(seed, idx);
      const std::size_t k = 2 + static_cast<std::size_t>(rng.below(63));
      Distribution p(rng.dirichlet(k));
      Distribution q(rng.dirichlet(k));
      report.merge(check_divergence_inequalities(p, q, args.thetas));
    }
    check_adversarial_pairs(args.thetas, report);
  }

  ordered_json out;
  out["schema"] = 1;
  out["checked"] = report.checked;
  out["violations"] = report.violations;
  if (std::isfinite(report.worst_slack)) {
    out["worst_slack"] = report.worst_slack;
  } else {
    out["worst_slack"] = nullptr;
  }
  if (!quiet) std::cout << out.dump(2) << "\n";
  return report.violations == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Sinkhorn-Knopp matrix scaling with certified error bounds"};
  app.name("sinkscale");
  app.set_version_flag("--version", "sinkscale 1.0.0");
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  bool quiet = false;
  bool json_out = false;
  std::string kernel = "auto";
  app.add_option("--seed", seed, "seed for commands that draw randomness");
  app.add_flag("--quiet", quiet, "suppress stdout reporting");
  app.add_flag("--json", json_out, "machine-readable stdout reporting");
  app.add_option("--kernel", kernel, "compute kernel variant")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  ScaleArgs scale_args;
  CLI::App* scale = app.add_subcommand(
      "scale", "scale a matrix to prescribed row and column sums");
  scale->fallthrough();
  scale->add_option("--matrix", scale_args.matrix_path,
                    "Matrix Market coordinate file")
      ->required();
  CLI::Option* targets_opt =
      scale->add_option("--targets", scale_args.target_paths,
                        "row-targets file and column-targets file")
          ->expected(2);
  CLI::Option* uniform_opt = scale->add_flag(
      "--uniform", scale_args.uniform, "unit targets on both sides");
  targets_opt->excludes(uniform_opt);
  uniform_opt->excludes(targets_opt);
  scale->add_option("--metric", scale_args.metric, "stopping metric")
      ->required()
      ->check(CLI::IsMember({"l1", "l2", "kl"}));
  scale->add_option("--eps", scale_args.eps, "stopping threshold")
      ->required()
      ->check(CLI::PositiveNumber);
  scale->add_option("--delta", scale_args.delta,
                    "override the budget-setting divergence level")
      ->check(CLI::PositiveNumber);
  scale->add_option("--max-iters", scale_args.max_iters,
                    "override the iteration budget");
  scale->add_option("--witness", scale_args.witness_path,
                    "reference matrix with the target marginals; enables "
                    "the pot_Z trace column");
  scale->add_option("--trace", scale_args.trace_path,
                    "per-half-step CSV output path")
      ->required();
  scale->add_option("--out", scale_args.out_path,
                    "scaling-factors JSON output path")
      ->required();

  MatchArgs match_args;
  CLI::App* match = app.add_subcommand(
      "match", "distinguish perfect from deficient bipartite matchings");
  match->fallthrough();
  match->add_option("--graph", match_args.graph_path, "edge-list file")
      ->required();
  match->add_option("--eps", match_args.eps, "distinguisher gap in (0,1)")
      ->required();
  match->add_flag("--oracle", match_args.oracle,
                  "also run the exact matcher and report agreement");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "property-check the divergence inequalities");
  verify->fallthrough();
  verify->add_option("--pairs", verify_args.pairs,
                     "number of random distribution pairs")
      ->required();
  verify->add_option("--theta", verify_args.theta_list,
                     "comma-separated positive thresholds")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (!kernels::select(kernel.c_str())) {
    std::cerr << "sinkscale: kernel '" << kernel
              << "' is not available on this machine\n";
    return kExitInputError;
  }

  try {
    if (scale->parsed()) return cmd_scale(scale_args, quiet, json_out);
    if (match->parsed()) return cmd_match(match_args, quiet);
    std::istringstream list(verify_args.theta_list);
    std::string tok;
    while (std::getline(list, tok, ',')) {
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        verify_args.thetas.push_back(v);
      } catch (const std::exception&) {
        std::cerr << "sinkscale: bad theta value '" << tok << "'\n";
        return kExitInputError;
      }
    }
    if (verify_args.thetas.empty()) {
      std::cerr << "sinkscale: --theta list is empty\n";
      return kExitInputError;
    }
    return cmd_verify(verify_args, seed, quiet);
  } catch (const Error& e) {
    std::cerr << "sinkscale: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace cli
}  // namespace sinkscale
