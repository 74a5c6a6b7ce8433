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

#include "sinkscale/sinkhorn.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "sinkscale/divergence.hpp"
#include "sinkscale/kernels.hpp"

namespace sinkscale {

namespace {

// Accumulated scalers are kept inside this range by shifting a power of two
// between the row and column factors; the factorization is preserved
// exactly because the shift cancels in every product.
constexpr double kScalerLo = 1e-300;
constexpr double kScalerHi = 1e300;

int mid_exponent(const std::vector<double>& values) {
  int emin = std::numeric_limits<int>::max();
  int emax = std::numeric_limits<int>::min();
  for (double v : values) {
    const int e = std::ilogb(v);
    emin = std::min(emin, e);
    emax = std::max(emax, e);
  }
  return (emin + emax) / 2;
}

void shift_scalers(std::vector<double>& shrink, std::vector<double>& grow) {
  // Split the exponent gap evenly so neither side ends up at an extreme.
  const int k = (mid_exponent(shrink) - mid_exponent(grow)) / 2;
  if (k == 0) return;
  for (double& v : shrink) v = std::ldexp(v, -k);
  for (double& v : grow) v = std::ldexp(v, k);
}

void rebalance_if_needed(ScalingState& state) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : state.row_scaler) {
    const double m = std::fabs(v);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  bool row_out = hi > kScalerHi || lo < kScalerLo;
  double clo = std::numeric_limits<double>::infinity();
  double chi = 0.0;
  for (double v : state.col_scaler) {
    const double m = std::fabs(v);
    clo = std::min(clo, m);
    chi = std::max(chi, m);
  }
  bool col_out = chi > kScalerHi || clo < kScalerLo;
  if (!row_out && !col_out) return;
  if (!(lo > 0.0) || !(clo > 0.0) || !std::isfinite(hi) ||
      !std::isfinite(chi)) {
    throw Error("accumulated scaling factors left the representable range");
  }
  if (row_out) {
    shift_scalers(state.row_scaler, state.col_scaler);
  } else {
    shift_scalers(state.col_scaler, state.row_scaler);
  }
}

const SparseNonnegMatrix& mat(const ScalingState& state) {
  return state.instance->matrix();
}

std::vector<double> current_row_sums(const ScalingState& state) {
  std::vector<double> out(mat(state).n_rows());
  kernels::active().segment_sums(state.values.data(),
                                 mat(state).row_ptr().data(),
                                 mat(state).n_rows(), out.data());
  return out;
}

std::vector<double> current_col_sums(const ScalingState& state) {
  std::vector<double> out(mat(state).n_cols());
  kernels::active().segment_sums_gather(
      state.values.data(), mat(state).csc_perm().data(),
      mat(state).col_ptr().data(), mat(state).n_cols(), out.data());
  return out;
}

// KL divergence of target/h from sums/h.
double marginal_kl(const std::vector<double>& target,
                   const std::vector<double>& sums, double h) {
  std::vector<double> pi_target(target.size());
  std::vector<double> pi_sums(sums.size());
  kernels::active().div_by(target.data(), target.size(), h, pi_target.data());
  kernels::active().div_by(sums.data(), sums.size(), h, pi_sums.data());
  return kl_divergence_raw(pi_target.data(), pi_sums.data(), pi_target.size());
}

// Precomputed support mapping of a feasibility witness: value k of the
// witness lives at canonical position pos[k] of the instance's pattern.
struct WitnessContext {
  std::vector<double> values;
  std::vector<std::uint32_t> pos;
  double h = 1.0;

  double potential(const ScalingState& state) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      acc += values[k] * std::log(values[k] / state.values[pos[k]]);
    }
    return acc / h;
  }
};

WitnessContext prepare_witness(const ScalingInstance& instance,
                               const SparseNonnegMatrix& witness) {
  const SparseNonnegMatrix& a = instance.matrix();
  if (witness.n_rows() != a.n_rows() || witness.n_cols() != a.n_cols()) {
    throw DimensionMismatch("witness shape does not match the instance");
  }
  const std::vector<double> wr = row_sums(witness);
  for (std::size_t i = 0; i < wr.size(); ++i) {
    const double r = instance.row_targets()[i];
    if (!(std::fabs(wr[i] - r) <= 1e-6 * r)) {
      throw WitnessInfeasible("witness row " + std::to_string(i + 1) +
                              " sums to " + std::to_string(wr[i]) +
                              ", target " + std::to_string(r));
    }
  }
  const std::vector<double> wc = col_sums(witness);
  for (std::size_t j = 0; j < wc.size(); ++j) {
    const double c = instance.col_targets()[j];
    if (!(std::fabs(wc[j] - c) <= 1e-6 * c)) {
      throw WitnessInfeasible("witness column " + std::to_string(j + 1) +
                              " sums to " + std::to_string(wc[j]) +
                              ", target " + std::to_string(c));
    }
  }

  WitnessContext ctx;
  ctx.values = witness.values();
  ctx.pos.resize(witness.nnz());
  ctx.h = instance.params().h;
  for (std::size_t i = 0; i < witness.n_rows(); ++i) {
    std::uint32_t ka = a.row_ptr()[i];
    const std::uint32_t ka_end = a.row_ptr()[i + 1];
    for (std::uint32_t kw = witness.row_ptr()[i];
         kw < witness.row_ptr()[i + 1]; ++kw) {
      const std::uint32_t j = witness.col_idx()[kw];
      while (ka < ka_end && a.col_idx()[ka] < j) ++ka;
      if (ka == ka_end || a.col_idx()[ka] != j) {
        throw WitnessSupportViolation(
            "witness entry (" + std::to_string(i + 1) + ", " +
            std::to_string(j + 1) + ") is outside the instance support");
      }
      ctx.pos[kw] = ka;
    }
  }
  return ctx;
}

TraceRecord measure(const ScalingState& state, const WitnessContext* witness) {
  const std::vector<double> rs = current_row_sums(state);
  const std::vector<double> cs = current_col_sums(state);
  const std::vector<double>& r = state.instance->row_targets();
  const std::vector<double>& c = state.instance->col_targets();
  const double h = state.instance->params().h;
  const kernels::Ops& ops = kernels::active();

  TraceRecord rec;
  rec.t = state.t;
  rec.phase = state.phase;
  if (state.phase == Phase::kAfterColumnScale) {
    rec.err1 = ops.l1_deviation(rs.data(), r.data(), rs.size());
    rec.err2 = std::sqrt(ops.l2sq_deviation(rs.data(), r.data(), rs.size()));
  } else {
    rec.err1 = ops.l1_deviation(cs.data(), c.data(), cs.size());
    rec.err2 = std::sqrt(ops.l2sq_deviation(cs.data(), c.data(), cs.size()));
  }
  rec.kl_row = marginal_kl(r, rs, h);
  rec.kl_col = marginal_kl(c, cs, h);
  if (witness != nullptr) rec.potential = witness->potential(state);
  return rec;
}

double metric_of(const TraceRecord& rec, Metric metric) {
  switch (metric) {
    case Metric::kL1:
      return rec.err1;
    case Metric::kL2:
      return rec.err2;
    case Metric::kKlMarginal:
    default:
      return rec.phase == Phase::kAfterColumnScale ? rec.kl_row : rec.kl_col;
  }
}

}  // namespace

SparseNonnegMatrix ScalingState::current() const {
  return instance->matrix().with_values(values);
}

ScalingState initialize(const ScalingInstance& instance) {
  const SparseNonnegMatrix& a = instance.matrix();
  ScalingState state;
  state.instance = &instance;
  state.values = a.values();
  state.phase = Phase::kAfterColumnScale;
  state.t = 0;
  state.row_scaler.assign(a.n_rows(), 1.0);

  std::vector<double> sums(a.n_cols());
  kernels::active().segment_sums_gather(state.values.data(),
                                        a.csc_perm().data(),
                                        a.col_ptr().data(), a.n_cols(),
                                        sums.data());
  state.col_scaler.resize(a.n_cols());
  for (std::size_t j = 0; j < a.n_cols(); ++j) {
    assert(sums[j] > 0.0);  // empty columns were rejected at validation
    state.col_scaler[j] = instance.col_targets()[j] / sums[j];
  }
  kernels::active().scale_by_indexed_factor(state.values.data(),
                                            a.col_idx().data(), a.nnz(),
                                            state.col_scaler.data());
  rebalance_if_needed(state);
  return state;
}

void row_step(ScalingState& state) {
  if (state.phase != Phase::kAfterColumnScale) {
    throw Error("row_step requires a column-feasible state");
  }
  const SparseNonnegMatrix& a = mat(state);
  std::vector<double> sums = current_row_sums(state);
  std::vector<double> f(a.n_rows());
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    assert(sums[i] > 0.0);  // empty rows were rejected at validation
    f[i] = state.instance->row_targets()[i] / sums[i];
    state.row_scaler[i] *= f[i];
  }
  kernels::active().scale_segments(state.values.data(), a.row_ptr().data(),
                                   a.n_rows(), f.data());
  state.phase = Phase::kAfterRowScale;
  rebalance_if_needed(state);
}

void col_step(ScalingState& state) {
  if (state.phase != Phase::kAfterRowScale) {
    throw Error("col_step requires a row-feasible state");
  }
  const SparseNonnegMatrix& a = mat(state);
  std::vector<double> sums = current_col_sums(state);
  std::vector<double> f(a.n_cols());
  for (std::size_t j = 0; j < a.n_cols(); ++j) {
    assert(sums[j] > 0.0);
    f[j] = state.instance->col_targets()[j] / sums[j];
    state.col_scaler[j] *= f[j];
  }
  kernels::active().scale_by_indexed_factor(state.values.data(),
                                            a.col_idx().data(), a.nnz(),
                                            f.data());
  state.phase = Phase::kAfterColumnScale;
  state.t += 1;
  rebalance_if_needed(state);
}

double error_l1(const ScalingState& state) {
  const kernels::Ops& ops = kernels::active();
  if (state.phase == Phase::kAfterColumnScale) {
    const std::vector<double> rs = current_row_sums(state);
    const std::vector<double>& r = state.instance->row_targets();
    return ops.l1_deviation(rs.data(), r.data(), rs.size());
  }
  const std::vector<double> cs = current_col_sums(state);
  const std::vector<double>& c = state.instance->col_targets();
  return ops.l1_deviation(cs.data(), c.data(), cs.size());
}

double error_l2(const ScalingState& state) {
  const kernels::Ops& ops = kernels::active();
  if (state.phase == Phase::kAfterColumnScale) {
    const std::vector<double> rs = current_row_sums(state);
    const std::vector<double>& r = state.instance->row_targets();
    return std::sqrt(ops.l2sq_deviation(rs.data(), r.data(), rs.size()));
  }
  const std::vector<double> cs = current_col_sums(state);
  const std::vector<double>& c = state.instance->col_targets();
  return std::sqrt(ops.l2sq_deviation(cs.data(), c.data(), cs.size()));
}

double kl_marginal(const ScalingState& state) {
  const double h = state.instance->params().h;
  if (state.phase == Phase::kAfterColumnScale) {
    return marginal_kl(state.instance->row_targets(),
                       current_row_sums(state), h);
  }
  return marginal_kl(state.instance->col_targets(), current_col_sums(state),
                     h);
}

double stopping_delta(const StoppingRule& rule, const InstanceParams& params) {
  if (!(rule.threshold > 0.0)) {
    throw Error("stopping threshold must be strictly positive");
  }
  const double eps = rule.threshold;
  switch (rule.metric) {
    case Metric::kL1:
      return eps * eps / (2.0 * params.h * params.h);
    case Metric::kL2:
      return (1.0 - std::log(2.0)) /
             (2.0 * params.rho * params.h * (1.0 / eps + 1.0 / (eps * eps)));
    case Metric::kKlMarginal:
    default:
      return eps;
  }
}

RunResult run(const ScalingInstance& instance, const StoppingRule& rule,
              const SparseNonnegMatrix* witness) {
  std::uint64_t max_iters;
  if (rule.max_iters.has_value()) {
    if (*rule.max_iters < 1) throw Error("max_iters must be at least 1");
    max_iters = *rule.max_iters;
  } else {
    max_iters = iteration_budget(instance.params(),
                                 stopping_delta(rule, instance.params()));
  }

  WitnessContext ctx;
  bool with_witness = false;
  if (witness != nullptr) {
    ctx = prepare_witness(instance, *witness);
    with_witness = true;
  }
  const WitnessContext* ctxp = with_witness ? &ctx : nullptr;

  RunResult result{initialize(instance), IterationTrace{}, Outcome::kConverged,
                   0, 0.0, std::numeric_limits<double>::infinity()};
  ScalingState& state = result.state;

  const auto note = [&](const TraceRecord& rec) {
    result.trace.records.push_back(rec);
    const double value = metric_of(rec, rule.metric);
    result.best_metric = std::min(result.best_metric, value);
    return value;
  };

  double value = note(measure(state, ctxp));
  while (!(value <= rule.threshold)) {
    row_step(state);
    value = note(measure(state, ctxp));
    if (value <= rule.threshold) break;
    if (state.t >= max_iters) {
      result.outcome = Outcome::kBudgetExhausted;
      break;
    }
    col_step(state);
    value = note(measure(state, ctxp));
  }
  result.iterations_used = state.t;
  result.final_metric = value;
  return result;
}

PotentialReport certify_potential(const IterationTrace& trace,
                                  const InstanceParams& params, double tol) {
  PotentialReport report;
  report.records = trace.records.size();
  report.potential_upper_bound =
      std::log1p(2.0 * params.delta_cols * params.rho / params.nu);
  if (trace.records.empty() || !trace.records.front().potential.has_value()) {
    return report;  // nothing to certify without a recorded potential
  }
  report.has_witness = true;
  report.initial_potential = *trace.records.front().potential;
  report.min_potential = report.initial_potential;

  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const TraceRecord& rec = trace.records[k];
    report.min_potential = std::min(report.min_potential, *rec.potential);
    if (k == 0) continue;
    const TraceRecord& prev = trace.records[k - 1];
    const double drop = *prev.potential - *rec.potential;
    const double expected = prev.phase == Phase::kAfterColumnScale
                                ? prev.kl_row
                                : prev.kl_col;
    report.max_identity_residual =
        std::max(report.max_identity_residual, std::fabs(drop - expected));
    report.max_rise = std::max(report.max_rise, -drop);
  }

  report.initial_within_bound =
      report.initial_potential <= report.potential_upper_bound + tol;
  report.nonnegative = report.min_potential >= -tol;
  report.identities_hold = report.max_identity_residual <= tol;
  report.monotone = report.max_rise <= tol;
  return report;
}

}  // namespace sinkscale
