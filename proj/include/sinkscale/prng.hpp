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

#ifndef SINKSCALE_PRNG_HPP_
#define SINKSCALE_PRNG_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

namespace sinkscale {

// SplitMix64 (Steele, Lea, Flood 2014; Vigna's reference constants).
//
// This is the single source of randomness in the project. The algorithm is
// fixed here, rather than delegated to std::mt19937 or similar, so that a
// seed fully specifies every generated test instance across compilers and
// standard libraries, and so that the stream can be reproduced in a few
// lines of any language. All derived quantities (unit doubles, bounded
// integers, exponentials) are defined in terms of next() below and are part
// of the reproducibility contract documented in the README.

inline std::uint64_t splitmix64_mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform double in (0, 1): top 53 bits, offset by half an ulp so the
  // result is never 0 (safe as a log() argument) and never 1.
  double unit() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Standard exponential via inversion.
  double exponential() { return -std::log(unit()); }

  // Integer in [0, n). Plain modulo; the bias of ~n/2^64 is irrelevant for
  // test-instance generation and keeps the stream definition trivial.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Symmetric Dirichlet(1) sample of length k: normalized exponentials.
  std::vector<double> dirichlet(std::size_t k) {
    std::vector<double> p(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      p[i] = exponential();
      total += p[i];
    }
    for (std::size_t i = 0; i < k; ++i) p[i] /= total;
    return p;
  }

 private:
  std::uint64_t state_;
};

// Independent child stream for (seed, tag). Both arguments pass through the
// SplitMix64 finalizer, so nearby seeds or tags do not produce overlapping
// or correlated streams.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64(
      splitmix64_mix(seed ^ splitmix64_mix(tag + 0x9E3779B97F4A7C15ULL)));
}

}  // namespace sinkscale

#endif  // SINKSCALE_PRNG_HPP_
