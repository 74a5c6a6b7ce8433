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

#ifndef SINKSCALE_KERNELS_HPP_
#define SINKSCALE_KERNELS_HPP_

#include <cstddef>
#include <cstdint>

namespace sinkscale {
namespace kernels {

// Hot loops of the scaling engine, behind function pointers so a SIMD
// variant can be selected at runtime. Two implementations exist: a scalar
// reference and an AVX2 variant (x86-64 only, used when the CPU supports
// it). Both are required to produce bit-identical output.
//
// Reduction-order contract
// ------------------------
// Elementwise kernels (multiply, divide, sqrt) are bit-identical across
// variants for free under IEEE-754. Reductions are not, so every sum here
// is defined to use four striped partial accumulators: element k of a
// segment is added into accumulator k mod 4, and the four accumulators are
// combined as (s0 + s1) + (s2 + s3). The scalar reference implements this
// order directly and the AVX2 variant realizes it with one 4-lane vector
// accumulator, so the two agree bit for bit. This fixed order is the
// canonical accumulation order for the whole library: every row sum,
// column sum, and error norm is produced by these kernels, which is what
// makes traces byte-reproducible across machines and kernel choices.

struct Ops {
  const char* name;

  // vals[k] *= factors[idx[k]] for k in [0, n).
  void (*scale_by_indexed_factor)(double* vals, const std::uint32_t* idx,
                                  std::size_t n, const double* factors);

  // For each segment s in [0, n_segs):
  //   vals[k] *= f[s] for k in [seg_ptr[s], seg_ptr[s+1]).
  void (*scale_segments)(double* vals, const std::uint32_t* seg_ptr,
                         std::size_t n_segs, const double* f);

  // out[s] = striped sum of vals[seg_ptr[s] .. seg_ptr[s+1]).
  void (*segment_sums)(const double* vals, const std::uint32_t* seg_ptr,
                       std::size_t n_segs, double* out);

  // out[s] = striped sum of vals[perm[k]] for k in [seg_ptr[s], seg_ptr[s+1]).
  void (*segment_sums_gather)(const double* vals, const std::uint32_t* perm,
                              const std::uint32_t* seg_ptr,
                              std::size_t n_segs, double* out);

  // Striped sum of |a[i] - b[i]|.
  double (*l1_deviation)(const double* a, const double* b, std::size_t n);

  // Striped sum of (a[i] - b[i])^2.
  double (*l2sq_deviation)(const double* a, const double* b, std::size_t n);

  // Striped sum of (sqrt(a[i]) - sqrt(b[i]))^2.
  double (*hellinger_sq)(const double* a, const double* b, std::size_t n);

  // out[i] = v[i] / divisor.
  void (*div_by)(const double* v, std::size_t n, double divisor, double* out);
};

const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_supports_avx2();
const Ops& avx2_ops();  // callers must check cpu_supports_avx2() first
#endif

// Currently selected variant. Defaults to the best available (AVX2 when the
// CPU has it, scalar otherwise); the SINKSCALE_KERNEL environment variable
// ("scalar", "avx2", "auto") overrides the default at first use.
const Ops& active();

// Force a variant by name ("scalar", "avx2", "auto"). Returns false and
// leaves the selection unchanged if the name is unknown or the variant is
// unavailable on this CPU.
bool select(const char* name);

}  // namespace kernels
}  // namespace sinkscale

#endif  // SINKSCALE_KERNELS_HPP_
