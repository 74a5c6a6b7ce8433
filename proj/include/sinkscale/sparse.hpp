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

#ifndef SINKSCALE_SPARSE_HPP_
#define SINKSCALE_SPARSE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinkscale/errors.hpp"

namespace sinkscale {

struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

// Sparse non-negative matrix. Zeros are represented by absence: every
// stored value is strictly positive, and no coordinate appears twice.
// Entries are kept in canonical order (sorted by row, then column) with a
// compressed row structure plus a column-major permutation, so both row and
// column sweeps are O(nnz). Immutable after construction.
//
// Dimensions and nnz are capped at 2^31 - 1 because the SIMD gather kernels
// use 32-bit signed offsets.
class SparseNonnegMatrix {
 public:
  SparseNonnegMatrix(std::size_t n_rows, std::size_t n_cols,
                     std::vector<Entry> entries);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }

  // Canonical-order entry access.
  Entry entry(std::size_t k) const {
    return {row_of_[k], col_idx_[k], values_[k]};
  }

  // Offsets of each row's entry range within the canonical arrays.
  const std::vector<std::uint32_t>& row_ptr() const { return row_ptr_; }
  // Column index of each canonical entry.
  const std::vector<std::uint32_t>& col_idx() const { return col_idx_; }
  // Row index of each canonical entry.
  const std::vector<std::uint32_t>& row_of() const { return row_of_; }
  // Stored values in canonical order.
  const std::vector<double>& values() const { return values_; }

  // Column-major view: col_ptr()[j] .. col_ptr()[j+1] indexes csc_perm(),
  // whose entries are positions into the canonical arrays, ordered by
  // (column, row).
  const std::vector<std::uint32_t>& col_ptr() const { return col_ptr_; }
  const std::vector<std::uint32_t>& csc_perm() const { return csc_perm_; }

  double min_value() const { return min_value_; }  // 0 when nnz == 0
  double max_value() const { return max_value_; }

  // Same sparsity pattern, new values (strictly positive, canonical order).
  SparseNonnegMatrix with_values(std::vector<double> values) const;

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<std::uint32_t> row_ptr_;
  std::vector<std::uint32_t> row_of_;
  std::vector<std::uint32_t> col_idx_;
  std::vector<double> values_;
  std::vector<std::uint32_t> col_ptr_;
  std::vector<std::uint32_t> csc_perm_;
  double min_value_;
  double max_value_;
};

// Per-row / per-column sums of the stored entries, accumulated in the
// library's canonical striped order (see kernels.hpp).
std::vector<double> row_sums(const SparseNonnegMatrix& a);
std::vector<double> col_sums(const SparseNonnegMatrix& a);

// Striped sum of a full vector; the library's canonical total.
double striped_total(const std::vector<double>& v);

// Prescribed row sums r and column sums c. All entries must be strictly
// positive and the two sums must agree to 1e-9 relative.
struct TargetVectors {
  TargetVectors(std::vector<double> r_in, std::vector<double> c_in);

  std::vector<double> r;
  std::vector<double> c;
};

// Derived quantities every bound is expressed in:
//   h          common l1 norm of the targets
//   rho        largest single target entry
//   nu         smallest stored value divided by largest stored value
//   delta_cols largest number of stored entries in any one column
struct InstanceParams {
  double h;
  double rho;
  double nu;
  std::uint32_t delta_cols;
};

// A matrix certified compatible with its targets: dimensions agree, no row
// or column is empty, and the column targets have been rescaled by
// sum(r)/sum(c) so both target sums equal h in the working representation.
class ScalingInstance {
 public:
  ScalingInstance(SparseNonnegMatrix matrix, std::vector<double> row_targets,
                  std::vector<double> col_targets, InstanceParams params)
      : matrix_(std::move(matrix)),
        row_targets_(std::move(row_targets)),
        col_targets_(std::move(col_targets)),
        params_(params) {}

  const SparseNonnegMatrix& matrix() const { return matrix_; }
  const std::vector<double>& row_targets() const { return row_targets_; }
  const std::vector<double>& col_targets() const { return col_targets_; }
  const InstanceParams& params() const { return params_; }

 private:
  SparseNonnegMatrix matrix_;
  std::vector<double> row_targets_;
  std::vector<double> col_targets_;
  InstanceParams params_;
};

// Checks dimensions and rejects matrices with an all-zero row or column
// (no positive targets are reachable for such a matrix); computes the
// derived parameters.
ScalingInstance validate_instance(const SparseNonnegMatrix& a,
                                  const TargetVectors& targets);

// ceil(ln(1 + 2 * delta_cols * rho / nu) / delta): the iteration count
// within which some row- or column-normalized iterate is guaranteed to have
// marginal KL divergence at most delta. Saturates at 2^62 instead of
// overflowing for very small delta.
std::uint64_t iteration_budget(const InstanceParams& params, double delta);

}  // namespace sinkscale

#endif  // SINKSCALE_SPARSE_HPP_
