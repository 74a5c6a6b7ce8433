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

// Scalar reference kernels. These define the semantics; the SIMD variants
// must match them bit for bit. See the reduction-order contract in
// kernels.hpp: element k of a span feeds partial accumulator k mod 4 and
// the partials combine as (s0 + s1) + (s2 + s3).

#include <cmath>

#include "sinkscale/kernels.hpp"

namespace sinkscale {
namespace kernels {
namespace {

inline double combine(const double lane[4]) {
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double striped_sum(const double* v, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) lane[k & 3] += v[k];
  return combine(lane);
}

void scale_by_indexed_factor(double* vals, const std::uint32_t* idx,
                             std::size_t n, const double* factors) {
  for (std::size_t k = 0; k < n; ++k) vals[k] *= factors[idx[k]];
}

void scale_segments(double* vals, const std::uint32_t* seg_ptr,
                    std::size_t n_segs, const double* f) {
  for (std::size_t s = 0; s < n_segs; ++s) {
    const double fs = f[s];
    for (std::uint32_t k = seg_ptr[s]; k < seg_ptr[s + 1]; ++k) vals[k] *= fs;
  }
}

void segment_sums(const double* vals, const std::uint32_t* seg_ptr,
                  std::size_t n_segs, double* out) {
  for (std::size_t s = 0; s < n_segs; ++s) {
    out[s] = striped_sum(vals + seg_ptr[s], seg_ptr[s + 1] - seg_ptr[s]);
  }
}

void segment_sums_gather(const double* vals, const std::uint32_t* perm,
                         const std::uint32_t* seg_ptr, std::size_t n_segs,
                         double* out) {
  for (std::size_t s = 0; s < n_segs; ++s) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::uint32_t b = seg_ptr[s];
    const std::uint32_t len = seg_ptr[s + 1] - b;
    for (std::uint32_t k = 0; k < len; ++k) lane[k & 3] += vals[perm[b + k]];
    out[s] = combine(lane);
  }
}

double l1_deviation(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) lane[k & 3] += std::fabs(a[k] - b[k]);
  return combine(lane);
}

double l2sq_deviation(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    lane[k & 3] += d * d;
  }
  return combine(lane);
}

double hellinger_sq(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const double d = std::sqrt(a[k]) - std::sqrt(b[k]);
    lane[k & 3] += d * d;
  }
  return combine(lane);
}

void div_by(const double* v, std::size_t n, double divisor, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = v[k] / divisor;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",          &scale_by_indexed_factor,
      &scale_segments,   &segment_sums,
      &segment_sums_gather, &l1_deviation,
      &l2sq_deviation,   &hellinger_sq,
      &div_by,
  };
  return ops;
}

}  // namespace kernels
}  // namespace sinkscale
