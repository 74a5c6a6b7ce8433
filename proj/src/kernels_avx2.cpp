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

// AVX2 kernels. This translation unit is compiled with -mavx2; nothing in
// it may run unless cpu_supports_avx2() returned true.
//
// Every reduction keeps one 4-lane vector accumulator whose lane i receives
// elements k with k mod 4 == i, exactly as the scalar reference does with
// its four partial sums, and the lanes are combined in the same fixed order.
// Remainder elements (segment length not a multiple of 4) are added into
// the spilled lane array one at a time, again matching the reference. The
// elementwise kernels rely on IEEE-754 mul/div/sqrt being correctly rounded
// in both paths; the build disables FP contraction so no fused operations
// sneak in on either side.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "sinkscale/kernels.hpp"

namespace sinkscale {
namespace kernels {
namespace {

inline double combine(const double lane[4]) {
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double finish_striped(__m256d acc, const double* v, std::size_t from,
                             std::size_t n) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t k = from; k < n; ++k) lane[k & 3] += v[k];
  return combine(lane);
}

double striped_sum(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + k));
  return finish_striped(acc, v, k, n);
}

void scale_by_indexed_factor(double* vals, const std::uint32_t* idx,
                             std::size_t n, const double* factors) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i vi =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    const __m256d f = _mm256_i32gather_pd(factors, vi, 8);
    _mm256_storeu_pd(vals + k, _mm256_mul_pd(_mm256_loadu_pd(vals + k), f));
  }
  for (; k < n; ++k) vals[k] *= factors[idx[k]];
}

void scale_segments(double* vals, const std::uint32_t* seg_ptr,
                    std::size_t n_segs, const double* f) {
  for (std::size_t s = 0; s < n_segs; ++s) {
    const std::uint32_t b = seg_ptr[s];
    const std::uint32_t e = seg_ptr[s + 1];
    const __m256d fv = _mm256_set1_pd(f[s]);
    std::uint32_t k = b;
    for (; k + 4 <= e; k += 4) {
      _mm256_storeu_pd(vals + k, _mm256_mul_pd(_mm256_loadu_pd(vals + k), fv));
    }
    for (; k < e; ++k) vals[k] *= f[s];
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
    const std::uint32_t b = seg_ptr[s];
    const std::uint32_t len = seg_ptr[s + 1] - b;
    __m256d acc = _mm256_setzero_pd();
    std::uint32_t k = 0;
    for (; k + 4 <= len; k += 4) {
      const __m128i vi =
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(perm + b + k));
      acc = _mm256_add_pd(acc, _mm256_i32gather_pd(vals, vi, 8));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; k < len; ++k) lane[k & 3] += vals[perm[b + k]];
    out[s] = combine(lane);
  }
}

double l1_deviation(const double* a, const double* b, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(signmask, d));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; k < n; ++k) lane[k & 3] += std::fabs(a[k] - b[k]);
  return combine(lane);
}

double l2sq_deviation(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    lane[k & 3] += d * d;
  }
  return combine(lane);
}

double hellinger_sq(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_sqrt_pd(_mm256_loadu_pd(a + k)),
                                    _mm256_sqrt_pd(_mm256_loadu_pd(b + k)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; k < n; ++k) {
    const double d = std::sqrt(a[k]) - std::sqrt(b[k]);
    lane[k & 3] += d * d;
  }
  return combine(lane);
}

void div_by(const double* v, std::size_t n, double divisor, double* out) {
  const __m256d dv = _mm256_set1_pd(divisor);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_loadu_pd(v + k), dv));
  }
  for (; k < n; ++k) out[k] = v[k] / divisor;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",            &scale_by_indexed_factor,
      &scale_segments,   &segment_sums,
      &segment_sums_gather, &l1_deviation,
      &l2sq_deviation,   &hellinger_sq,
      &div_by,
  };
  return ops;
}

}  // namespace kernels
}  // namespace sinkscale

#endif  // x86-64
