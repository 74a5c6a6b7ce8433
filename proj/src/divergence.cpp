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

#include "sinkscale/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sinkscale/kernels.hpp"

namespace sinkscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_size(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) {
    throw LengthMismatch("distributions have different lengths");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> p) : p_(std::move(p)) {
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) {
      throw InvalidDistribution("distribution entries must be non-negative");
    }
    total += v;
  }
  if (!(std::fabs(total - 1.0) <= 1e-12)) {
    throw InvalidDistribution("distribution entries must sum to 1");
  }
}

ThetaConstants theta_constants(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw NonpositiveTheta("theta must be strictly positive and finite");
  }
  const double a = std::log1p(theta) / theta;
  return {theta, a, (1.0 - a) / theta};
}

double kl_divergence_raw(const double* p, const double* q, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) {
      if (!(q[i] > 0.0)) return kInf;
      acc += p[i] * std::log(p[i] / q[i]);
    }
  }
  return acc;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  require_same_size(p, q);
  return kl_divergence_raw(p.p().data(), q.p().data(), p.size());
}

double matrix_kl(const SparseNonnegMatrix& m, const SparseNonnegMatrix& n,
                 double h) {
  if (m.n_rows() != n.n_rows() || m.n_cols() != n.n_cols()) {
    throw DimensionMismatch("matrices have different shapes");
  }
  if (!(h > 0.0)) {
    throw Error("normalizer h must be strictly positive");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    std::uint32_t km = m.row_ptr()[i];
    const std::uint32_t km_end = m.row_ptr()[i + 1];
    std::uint32_t kn = n.row_ptr()[i];
    const std::uint32_t kn_end = n.row_ptr()[i + 1];
    while (km < km_end) {
      const std::uint32_t jm = m.col_idx()[km];
      // Entries of n strictly left of jm have no counterpart in m; their
      // summand is zero because the first factor is zero.
      while (kn < kn_end && n.col_idx()[kn] < jm) ++kn;
      if (kn == kn_end || n.col_idx()[kn] != jm) return kInf;
      acc += m.values()[km] * std::log(m.values()[km] / n.values()[kn]);
      ++km;
      ++kn;
    }
  }
  return acc / h;
}

double pinsker_lower_bound(const Distribution& p, const Distribution& q) {
  require_same_size(p, q);
  const double l1 = kernels::active().l1_deviation(p.p().data(), q.p().data(),
                                                   p.size());
  return 0.5 * l1 * l1;
}

double gen_pinsker_rhs(const Distribution& p, const Distribution& q,
                       double theta) {
  require_same_size(p, q);
  const ThetaConstants tc = theta_constants(theta);
  double abs_part = 0.0;
  double quad_part = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.p()[i];
    const double qi = q.p()[i];
    if (pi == 0.0 && qi == 0.0) continue;
    if (qi > (1.0 + theta) * pi) {
      abs_part += std::fabs(qi - pi);
    } else {
      const double d = qi - pi;
      quad_part += d * d / pi;
    }
  }
  return (1.0 - tc.a_theta) * (abs_part + quad_part / theta);
}

double hellinger_distance(const Distribution& p, const Distribution& q) {
  require_same_size(p, q);
  return std::sqrt(
      kernels::active().hellinger_sq(p.p().data(), q.p().data(), p.size()));
}

void CheckReport::note(double margin, double slack) {
  checked += 1;
  if (!(margin >= -slack)) violations += 1;
  if (margin < worst_slack) worst_slack = margin;
}

void CheckReport::merge(const CheckReport& other) {
  checked += other.checked;
  violations += other.violations;
  worst_slack = std::min(worst_slack, other.worst_slack);
}

CheckReport verify_theta_facts(double theta, const std::vector<double>& grid,
                               double slack) {
  const ThetaConstants tc = theta_constants(theta);
  CheckReport report;
  for (double t : grid) {
    if (t >= theta) {
      report.note(std::exp(tc.a_theta * t) - (1.0 + t), slack);
    }
    if (t <= theta) {
      report.note(std::exp(t - tc.b_theta * t * t) - (1.0 + t), slack);
    }
  }
  return report;
}

CheckReport verify_easier_inequalities(const std::vector<double>& grid,
                                       double slack) {
  CheckReport report;
  for (double z : grid) {
    const double mid = (1.0 + z) * std::log1p(z);
    report.note(z + 0.5 * z * z - mid, slack);
    report.note(mid - z, slack);
    report.note(std::log1p(z) - (z - 0.5 * z * z), slack);
  }
  return report;
}

CheckReport check_divergence_inequalities(const Distribution& p,
                                          const Distribution& q,
                                          const std::vector<double>& thetas,
                                          double slack) {
  CheckReport report;
  const double kl = kl_divergence(p, q);
  report.note(kl - 0.0, slack);
  report.note(kl - pinsker_lower_bound(p, q), slack);
  for (double theta : thetas) {
    report.note(kl - gen_pinsker_rhs(p, q, theta), slack);
  }
  const double rhs1 = gen_pinsker_rhs(p, q, 1.0);
  const double l1 =
      kernels::active().l1_deviation(p.p().data(), q.p().data(), p.size());
  report.note(rhs1 - 0.5 * (1.0 - std::log(2.0)) * l1 * l1, slack);
  const double hell = hellinger_distance(p, q);
  report.note(kl - hell * hell, slack);
  return report;
}

}  // namespace sinkscale
