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

#include "sinkscale/matching.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sinkscale/errors.hpp"
#include "sinkscale/sinkhorn.hpp"

namespace sinkscale {
namespace {

constexpr double kStochasticTol = 1e-9;

bool near_ones(const std::vector<double>& sums) {
  for (double s : sums) {
    if (std::fabs(s - 1.0) > kStochasticTol) return false;
  }
  return true;
}

double deviation_from_ones(const std::vector<double>& sums) {
  double acc = 0.0;
  for (double s : sums) acc += std::fabs(s - 1.0);
  return acc;
}

}  // namespace

SparseNonnegMatrix adjacency_matrix(const BipartiteGraph& g) {
  std::vector<Entry> entries;
  entries.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    entries.push_back(Entry{e.first, e.second, 1.0});
  }
  return SparseNonnegMatrix(g.n_left, g.n_right, entries);
}

double hall_deficiency_bound(const SparseNonnegMatrix& y) {
  std::vector<double> rows = row_sums(y);
  std::vector<double> cols = col_sums(y);
  if (near_ones(cols)) return deviation_from_ones(rows);
  if (near_ones(rows)) return deviation_from_ones(cols);
  throw NotStochastic(
      "matrix is neither row- nor column-stochastic at tolerance 1e-9");
}

DistinguisherVerdict distinguish(const BipartiteGraph& g, double eps) {
  if (g.n_left != g.n_right) {
    throw NotSquare("graph parts have sizes " + std::to_string(g.n_left) +
                    " and " + std::to_string(g.n_right) +
                    "; the distinguisher needs equal parts");
  }
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw Error("eps must lie in (0, 1)");
  }
  const std::uint32_t n = g.n_left;

  std::vector<bool> left_seen(n, false), right_seen(n, false);
  for (const auto& e : g.edges) {
    if (e.first < n) left_seen[e.first] = true;
    if (e.second < n) right_seen[e.second] = true;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!left_seen[i] || !right_seen[i]) {
      return DistinguisherVerdict{DistinguisherVerdict::Kind::kMaxMatchingBelow,
                                  static_cast<double>(n) * (1.0 - eps), 0,
                                  2.0 * static_cast<double>(n)};
    }
  }

  SparseNonnegMatrix a = adjacency_matrix(g);
  std::vector<double> ones(n, 1.0);
  ScalingInstance instance = validate_instance(a, TargetVectors(ones, ones));

  StoppingRule rule;
  rule.metric = Metric::kL1;
  rule.threshold = static_cast<double>(n) * eps;
  RunResult result = run(instance, rule);

  if (result.outcome == Outcome::kConverged) {
    return DistinguisherVerdict{
        DistinguisherVerdict::Kind::kPerfectMatchingLikely,
        static_cast<double>(n), result.iterations_used, result.final_metric};
  }
  return DistinguisherVerdict{DistinguisherVerdict::Kind::kMaxMatchingBelow,
                              static_cast<double>(n) * (1.0 - eps),
                              result.iterations_used, result.best_metric};
}

}  // namespace sinkscale
