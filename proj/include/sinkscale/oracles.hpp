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

// Reference implementations kept deliberately independent of the library's
// sparse and kernel paths: dense row-major storage, plain left-to-right
// loops, combinatorial algorithms instead of scaling. They exist so that
// every number the fast paths produce can be recomputed a second way.

#ifndef SINKSCALE_ORACLES_HPP_
#define SINKSCALE_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinkscale/matching.hpp"
#include "sinkscale/sparse.hpp"

namespace sinkscale {
namespace oracles {

using DenseMatrix = std::vector<std::vector<double>>;

// Exact maximum bipartite matching by repeated augmenting-path search.
// O(V * E); intended for the small instances used in verification.
std::size_t max_matching_exact(const BipartiteGraph& g);

// Random bipartite graph: scanning (i, j) in row-major order, edge present
// iff the next unit draw from derive_stream(seed, 0) is below density.
BipartiteGraph random_bipartite(std::uint32_t n_left, std::uint32_t n_right,
                                double density, std::uint64_t seed);

struct GeneratorConfig {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  double density = 0.5;
  std::uint64_t seed = 0;
  // Entrywise perturbation factors are drawn uniformly from this range.
  double perturb_lo = 0.5;
  double perturb_hi = 2.0;
};

struct GeneratedInstance {
  SparseNonnegMatrix matrix;
  SparseNonnegMatrix witness;
  std::vector<double> row_targets;
  std::vector<double> col_targets;
};

// Builds an instance known to be scalable to its targets. A random support
// is drawn at the given density (then patched so no line is empty), random
// positive targets in [1, 2] per entry are fixed, and dense iterative
// proportional fitting is run on random starting values over that support
// until both marginals match to 1e-13. The fitted matrix is the witness,
// its actual marginals become the targets, and the returned matrix is the
// witness with each entry multiplied by a random row factor and column
// factor in [perturb_lo, perturb_hi], so the witness is exactly a diagonal
// rescaling of the matrix. Throws DegenerateSupport if fitting fails to
// converge on 100 independently drawn supports.
GeneratedInstance gen_scalable_instance(const GeneratorConfig& cfg);

DenseMatrix to_dense(const SparseNonnegMatrix& a);

std::vector<double> dense_row_sums(const DenseMatrix& a);
std::vector<double> dense_col_sums(const DenseMatrix& a);

double dense_l1(const std::vector<double>& a, const std::vector<double>& b);
double dense_l2(const std::vector<double>& a, const std::vector<double>& b);

// Relative entropy sum p_i ln(p_i / q_i) with 0 ln 0 = 0; +infinity when
// p_i > 0 meets q_i <= 0.
double dense_kl(const std::vector<double>& p, const std::vector<double>& q);

// (1/h) sum m_ij ln(m_ij / n_ij) over dense matrices, +infinity when an
// m-entry has no positive n-entry beneath it.
double dense_matrix_kl(const DenseMatrix& m, const DenseMatrix& n, double h);

double dense_pinsker(const std::vector<double>& p,
                     const std::vector<double>& q);

double dense_gen_pinsker(const std::vector<double>& p,
                         const std::vector<double>& q, double theta);

double dense_hellinger(const std::vector<double>& p,
                       const std::vector<double>& q);

}  // namespace oracles
}  // namespace sinkscale

#endif  // SINKSCALE_ORACLES_HPP_
