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

#ifndef SINKSCALE_MATCHING_HPP_
#define SINKSCALE_MATCHING_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "sinkscale/sparse.hpp"

namespace sinkscale {

// Bipartite graph over parts of size n_left and n_right; edges are 0-based
// (left, right) pairs with no duplicates.
struct BipartiteGraph {
  std::uint32_t n_left;
  std::uint32_t n_right;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// 0/1 matrix with a stored 1.0 exactly at each edge.
SparseNonnegMatrix adjacency_matrix(const BipartiteGraph& g);

// For a column-stochastic (or row-stochastic, tolerance 1e-9 per line) Y
// supported on a graph's edges, returns the l1 deviation of the other
// side's sums from all-ones. A square graph carrying such a Y has a
// matching of at least n minus this value: mass conservation gives every
// row set S at least |S| - error1(Y) distinct reachable columns, so the
// deficiency version of Hall's theorem applies.
double hall_deficiency_bound(const SparseNonnegMatrix& y);

struct DistinguisherVerdict {
  enum class Kind { kPerfectMatchingLikely, kMaxMatchingBelow };

  Kind kind;
  // kPerfectMatchingLikely: n. kMaxMatchingBelow: n(1-eps), a real-valued
  // ceiling on the maximum matching size.
  double bound;
  std::uint64_t iterations_used;
  // Smallest l1 error reached (kMaxMatchingBelow), or the converged error
  // (kPerfectMatchingLikely). 2n, the largest possible deviation, when an
  // isolated vertex made iteration pointless.
  double achieved_error1;
};

// Scales the adjacency matrix toward doubly stochastic with the l1 rule at
// threshold n*eps and the default budget (which works out to
// ceil(2 ln(1 + 2 delta_cols) / eps^2) for a 0/1 matrix with uniform
// targets). Reaching the threshold certifies a matching of size at least
// n(1-eps); exhausting the budget certifies the maximum matching is below
// n(1-eps). A graph with an isolated vertex gets the negative verdict
// immediately. eps must lie in (0,1); the parts must have equal size.
DistinguisherVerdict distinguish(const BipartiteGraph& g, double eps);

}  // namespace sinkscale

#endif  // SINKSCALE_MATCHING_HPP_
