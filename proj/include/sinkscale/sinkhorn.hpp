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

#ifndef SINKSCALE_SINKHORN_HPP_
#define SINKSCALE_SINKHORN_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sinkscale/sparse.hpp"

namespace sinkscale {

// Which side of the iterate was normalized last. AfterColumnScale means
// column sums equal the column targets and the rows carry the error;
// AfterRowScale is the mirror image.
enum class Phase { kAfterColumnScale, kAfterRowScale };

// One alternate-scaling iterate. The sparsity pattern is always that of the
// validated input matrix; values[k] is the current value of canonical entry
// k, and values[k] == A[k] * row_scaler[i(k)] * col_scaler[j(k)] up to
// rounding at every step. The iteration counter t counts completed
// row+column rounds: it starts at 0 and increases when a column scale
// completes a round.
struct ScalingState {
  const ScalingInstance* instance;  // non-owning; must outlive the state
  std::vector<double> values;
  Phase phase;
  std::uint64_t t;
  std::vector<double> row_scaler;
  std::vector<double> col_scaler;

  // Materializes the iterate as a standalone matrix.
  SparseNonnegMatrix current() const;
};

// Per-half-step measurements. err1/err2 are the l1/l2 deviation of the
// non-feasible side's sums from their targets; kl_row and kl_col are the
// divergences of the normalized target marginals from the corresponding
// normalized sum marginals, both recorded every half-step regardless of
// phase. potential is present when a reference matrix was supplied to run.
struct TraceRecord {
  std::uint64_t t;
  Phase phase;
  double err1;
  double err2;
  double kl_row;
  double kl_col;
  std::optional<double> potential;
};

struct IterationTrace {
  std::vector<TraceRecord> records;
};

enum class Metric { kL1, kL2, kKlMarginal };

// The run loop stops at the first half-step whose metric value is at most
// threshold. When max_iters is not given it defaults to the iteration
// budget for the metric-specific delta:
//   kL1:          delta = threshold^2 / (2 h^2)
//   kL2:          delta = (1 - ln 2) / (2 rho h (1/threshold + 1/threshold^2))
//   kKlMarginal:  delta = threshold
struct StoppingRule {
  Metric metric;
  double threshold;
  std::optional<std::uint64_t> max_iters;
};

double stopping_delta(const StoppingRule& rule, const InstanceParams& params);

enum class Outcome { kConverged, kBudgetExhausted };

struct RunResult {
  ScalingState state;
  IterationTrace trace;
  Outcome outcome;
  std::uint64_t iterations_used;  // t of the returned state
  double final_metric;            // rule metric at the returned state
  double best_metric;             // smallest rule metric seen in the run
};

// Column-normalizes the input so column sums equal the column targets;
// t = 0, all row factors 1.
ScalingState initialize(const ScalingInstance& instance);

// Normalizes all row sums to the row targets. Requires a column-feasible
// state; O(nnz).
void row_step(ScalingState& state);

// Normalizes all column sums to the column targets and completes the round
// (increments t). Requires a row-feasible state; O(nnz).
void col_step(ScalingState& state);

// l1 / l2 norm of the deviating side's sums minus its targets: row sums
// against row targets after a column scale, column sums against column
// targets after a row scale.
double error_l1(const ScalingState& state);
double error_l2(const ScalingState& state);

// KL divergence of the deviating side's normalized targets from its
// normalized current sums.
double kl_marginal(const ScalingState& state);

// Alternates row and column scales from the column-normalized start,
// recording a TraceRecord per half-step, until the rule metric reaches its
// threshold (kConverged, returning the first compliant iterate) or until
// rounds 0..max_iters have been examined on both sides (kBudgetExhausted,
// returning the last iterate). If a reference matrix `witness` with row
// sums r and column sums c (tolerance 1e-6 relative) and support inside the
// instance's support is supplied, every record carries the potential
// matrix_kl(witness, iterate, h), which decreases by exactly the matching
// marginal KL divergence at each half-step.
RunResult run(const ScalingInstance& instance, const StoppingRule& rule,
              const SparseNonnegMatrix* witness = nullptr);

// Outcome of checking a recorded run against the potential's guarantees:
// the starting value is at most ln(1 + 2 delta_cols rho / nu), the value
// never goes negative, and each half-step's drop equals the corresponding
// marginal KL divergence, all within tol.
struct PotentialReport {
  bool has_witness = false;
  std::size_t records = 0;
  double initial_potential = 0.0;
  double potential_upper_bound = 0.0;
  double min_potential = 0.0;
  double max_identity_residual = 0.0;
  double max_rise = 0.0;  // largest increase between consecutive records
  bool initial_within_bound = false;
  bool nonnegative = false;
  bool identities_hold = false;
  bool monotone = false;

  bool ok() const {
    return has_witness && initial_within_bound && nonnegative &&
           identities_hold && monotone;
  }
};

PotentialReport certify_potential(const IterationTrace& trace,
                                  const InstanceParams& params,
                                  double tol = 1e-9);

}  // namespace sinkscale

#endif  // SINKSCALE_SINKHORN_HPP_
