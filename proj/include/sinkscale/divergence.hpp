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

#ifndef SINKSCALE_DIVERGENCE_HPP_
#define SINKSCALE_DIVERGENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "sinkscale/errors.hpp"
#include "sinkscale/sparse.hpp"

namespace sinkscale {

// Finite probability vector: entries >= 0, sum within 1e-12 of 1.
class Distribution {
 public:
  explicit Distribution(std::vector<double> p);

  const std::vector<double>& p() const { return p_; }
  std::size_t size() const { return p_.size(); }

 private:
  std::vector<double> p_;
};

// a_theta = ln(1+theta)/theta and b_theta = (1 - a_theta)/theta. These are
// the constants of the two exponential facts checked by verify_theta_facts:
//   (1+t) <= e^(a_theta t)          for t >= theta
//   (1+t) <= e^(t - b_theta t^2)    for t <= theta
struct ThetaConstants {
  double theta;
  double a_theta;
  double b_theta;
};

ThetaConstants theta_constants(double theta);  // throws NonpositiveTheta

// Sum over i with p_i > 0 of p_i ln(p_i / q_i); a term with q_i = 0 makes
// the result +infinity. Non-negative whenever p and q are distributions.
double kl_divergence(const Distribution& p, const Distribution& q);

// Same sum without the Distribution validation; used on marginal vectors
// that are normalized by construction.
double kl_divergence_raw(const double* p, const double* q, std::size_t n);

// (1/h) * sum over coordinates of M_ij ln(M_ij / N_ij), with a zero summand
// where both entries are absent and +infinity if M has an entry where N has
// none. May be negative when M and N carry different total mass.
double matrix_kl(const SparseNonnegMatrix& m, const SparseNonnegMatrix& n,
                 double h);

// (1/2) * ||p - q||_1^2, the classical lower bound for kl_divergence(p, q).
double pinsker_lower_bound(const Distribution& p, const Distribution& q);

// Mixed lower bound for kl_divergence(p, q): indices with
// q_i > (1+theta) p_i contribute |q_i - p_i|, the rest contribute
// (q_i - p_i)^2 / (theta p_i), and the total is scaled by (1 - a_theta).
// Ties q_i == (1+theta) p_i go to the quadratic side; both forms coincide
// there, so the choice does not change the value. An index with p_i = 0 and
// q_i > 0 lands on the absolute-difference side, which needs no division;
// indices with p_i = q_i = 0 contribute nothing.
double gen_pinsker_rhs(const Distribution& p, const Distribution& q,
                       double theta);

// sqrt of sum of (sqrt(p_i) - sqrt(q_i))^2. Its square is another lower
// bound for kl_divergence(p, q).
double hellinger_distance(const Distribution& p, const Distribution& q);

// Uniform report for inequality sweeps: worst_slack is the smallest margin
// by which any checked inequality held (negative means a violation), and
// violations counts margins below -slack (slack 1e-12 unless stated).
struct CheckReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();

  void note(double margin, double slack);
  void merge(const CheckReport& other);
};

// Checks the two exponential facts above on every applicable grid point.
CheckReport verify_theta_facts(double theta, const std::vector<double>& grid,
                               double slack = 1e-12);

// Checks, for every grid z > 0, the strict chain
//   z + z^2/2 > (1+z) ln(1+z) > z   and   ln(1+z) > z - z^2/2.
CheckReport verify_easier_inequalities(const std::vector<double>& grid,
                                       double slack = 1e-12);

// Evaluates every divergence inequality this library promises on one pair:
// kl >= 0, kl >= pinsker_lower_bound, kl >= gen_pinsker_rhs for each theta,
// gen_pinsker_rhs(theta=1) >= (1 - ln 2)/2 * ||p-q||_1^2, and
// kl >= hellinger_distance^2.
CheckReport check_divergence_inequalities(const Distribution& p,
                                          const Distribution& q,
                                          const std::vector<double>& thetas,
                                          double slack = 1e-12);

}  // namespace sinkscale

#endif  // SINKSCALE_DIVERGENCE_HPP_
