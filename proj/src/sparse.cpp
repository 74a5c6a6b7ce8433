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

#include "sinkscale/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "sinkscale/kernels.hpp"

namespace sinkscale {

namespace {

constexpr std::size_t kIndexCap = 0x7FFFFFFF;  // signed 32-bit gather offsets

std::string coord(std::uint32_t i, std::uint32_t j) {
  return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

}  // namespace

SparseNonnegMatrix::SparseNonnegMatrix(std::size_t n_rows, std::size_t n_cols,
                                       std::vector<Entry> entries)
    : n_rows_(n_rows), n_cols_(n_cols) {
  if (n_rows == 0 || n_cols == 0) {
    throw InvalidMatrix("matrix dimensions must be positive");
  }
  if (n_rows > kIndexCap || n_cols > kIndexCap || entries.size() > kIndexCap) {
    throw InvalidMatrix("matrix dimensions and nnz are limited to 2^31 - 1");
  }
  for (const Entry& e : entries) {
    if (e.row >= n_rows || e.col >= n_cols) {
      throw InvalidMatrix("entry index out of range at " +
                          coord(e.row, e.col));
    }
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
      throw InvalidMatrix("stored values must be strictly positive and "
                          "finite; offending entry at " +
                          coord(e.row, e.col));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row &&
        entries[k].col == entries[k - 1].col) {
      throw InvalidMatrix("duplicate entry at " +
                          coord(entries[k].row, entries[k].col));
    }
  }

  const std::size_t nnz = entries.size();
  row_ptr_.assign(n_rows + 1, 0);
  row_of_.resize(nnz);
  col_idx_.resize(nnz);
  values_.resize(nnz);
  min_value_ = 0.0;
  max_value_ = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) {
    row_of_[k] = entries[k].row;
    col_idx_[k] = entries[k].col;
    values_[k] = entries[k].value;
    row_ptr_[entries[k].row + 1] += 1;
    if (k == 0) {
      min_value_ = max_value_ = entries[k].value;
    } else {
      min_value_ = std::min(min_value_, entries[k].value);
      max_value_ = std::max(max_value_, entries[k].value);
    }
  }
  for (std::size_t i = 0; i < n_rows; ++i) row_ptr_[i + 1] += row_ptr_[i];

  // Column-major permutation by stable counting sort on the column index;
  // canonical order is already sorted by row, so each column's positions
  // come out ordered by row.
  col_ptr_.assign(n_cols + 1, 0);
  for (std::size_t k = 0; k < nnz; ++k) col_ptr_[col_idx_[k] + 1] += 1;
  for (std::size_t j = 0; j < n_cols; ++j) col_ptr_[j + 1] += col_ptr_[j];
  csc_perm_.resize(nnz);
  std::vector<std::uint32_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t k = 0; k < nnz; ++k) {
    csc_perm_[next[col_idx_[k]]++] = static_cast<std::uint32_t>(k);
  }
}

SparseNonnegMatrix SparseNonnegMatrix::with_values(
    std::vector<double> values) const {
  if (values.size() != values_.size()) {
    throw LengthMismatch("value vector does not match the sparsity pattern");
  }
  std::vector<Entry> entries(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    entries[k] = {row_of_[k], col_idx_[k], values[k]};
  }
  return SparseNonnegMatrix(n_rows_, n_cols_, std::move(entries));
}

std::vector<double> row_sums(const SparseNonnegMatrix& a) {
  std::vector<double> out(a.n_rows());
  kernels::active().segment_sums(a.values().data(), a.row_ptr().data(),
                                 a.n_rows(), out.data());
  return out;
}

std::vector<double> col_sums(const SparseNonnegMatrix& a) {
  std::vector<double> out(a.n_cols());
  kernels::active().segment_sums_gather(a.values().data(), a.csc_perm().data(),
                                        a.col_ptr().data(), a.n_cols(),
                                        out.data());
  return out;
}

double striped_total(const std::vector<double>& v) {
  const std::uint32_t seg[2] = {0, static_cast<std::uint32_t>(v.size())};
  double out = 0.0;
  kernels::active().segment_sums(v.data(), seg, 1, &out);
  return out;
}

TargetVectors::TargetVectors(std::vector<double> r_in,
                             std::vector<double> c_in)
    : r(std::move(r_in)), c(std::move(c_in)) {
  if (r.empty() || c.empty()) {
    throw InvalidTarget("target vectors must be nonempty");
  }
  for (double v : r) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidTarget("row targets must be strictly positive and finite");
    }
  }
  for (double v : c) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidTarget(
          "column targets must be strictly positive and finite");
    }
  }
  const double sum_r = striped_total(r);
  const double sum_c = striped_total(c);
  if (!(std::fabs(sum_r - sum_c) <= 1e-9 * sum_r)) {
    throw TargetSumMismatch("row targets sum to " + std::to_string(sum_r) +
                            " but column targets sum to " +
                            std::to_string(sum_c));
  }
}

ScalingInstance validate_instance(const SparseNonnegMatrix& a,
                                  const TargetVectors& targets) {
  if (targets.r.size() != a.n_rows() || targets.c.size() != a.n_cols()) {
    throw DimensionMismatch(
        "matrix is " + std::to_string(a.n_rows()) + " x " +
        std::to_string(a.n_cols()) + " but targets have lengths " +
        std::to_string(targets.r.size()) + " and " +
        std::to_string(targets.c.size()));
  }
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    if (a.row_ptr()[i] == a.row_ptr()[i + 1]) {
      throw ZeroRowOrColumn(ZeroRowOrColumn::Axis::kRow, i + 1);
    }
  }
  for (std::size_t j = 0; j < a.n_cols(); ++j) {
    if (a.col_ptr()[j] == a.col_ptr()[j + 1]) {
      throw ZeroRowOrColumn(ZeroRowOrColumn::Axis::kCol, j + 1);
    }
  }

  const double h = striped_total(targets.r);
  const double sum_c = striped_total(targets.c);
  const double rescale = h / sum_c;
  std::vector<double> c(targets.c.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = targets.c[j] * rescale;

  double rho = 0.0;
  for (double v : targets.r) rho = std::max(rho, v);
  for (double v : c) rho = std::max(rho, v);

  std::uint32_t delta_cols = 0;
  for (std::size_t j = 0; j < a.n_cols(); ++j) {
    delta_cols = std::max(delta_cols, a.col_ptr()[j + 1] - a.col_ptr()[j]);
  }

  const InstanceParams params{h, rho, a.min_value() / a.max_value(),
                              delta_cols};
  return ScalingInstance(a, targets.r, std::move(c), params);
}

std::uint64_t iteration_budget(const InstanceParams& params, double delta) {
  if (!(delta > 0.0)) {
    throw NonpositiveDelta("delta must be strictly positive");
  }
  constexpr std::uint64_t kCap = 1ULL << 62;
  const double bound =
      std::log1p(2.0 * params.delta_cols * params.rho / params.nu);
  const double t = std::ceil(bound / delta);
  if (!(t < static_cast<double>(kCap))) return kCap;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

}  // namespace sinkscale
