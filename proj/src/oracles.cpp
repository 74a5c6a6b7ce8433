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

#include "sinkscale/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sinkscale/errors.hpp"
#include "sinkscale/prng.hpp"

namespace sinkscale {
namespace oracles {
namespace {

bool try_augment(std::uint32_t u,
                 const std::vector<std::vector<std::uint32_t>>& adj,
                 std::vector<bool>& visited, std::vector<int>& match_right) {
  for (std::uint32_t v : adj[u]) {
    if (visited[v]) continue;
    visited[v] = true;
    if (match_right[v] < 0 ||
        try_augment(static_cast<std::uint32_t>(match_right[v]), adj, visited,
                    match_right)) {
      match_right[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

void require_same_shape(const DenseMatrix& m, const DenseMatrix& n) {
  if (m.size() != n.size()) {
    throw DimensionMismatch("matrices have different row counts");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != n[i].size()) {
      throw DimensionMismatch("matrices differ in row " + std::to_string(i));
    }
  }
}

void require_same_length(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("vectors have lengths " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
}

}  // namespace

std::size_t max_matching_exact(const BipartiteGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.n_left);
  for (const auto& e : g.edges) {
    adj[e.first].push_back(e.second);
  }
  std::vector<int> match_right(g.n_right, -1);
  std::size_t matched = 0;
  std::vector<bool> visited(g.n_right);
  for (std::uint32_t u = 0; u < g.n_left; ++u) {
    visited.assign(g.n_right, false);
    if (try_augment(u, adj, visited, match_right)) ++matched;
  }
  return matched;
}

BipartiteGraph random_bipartite(std::uint32_t n_left, std::uint32_t n_right,
                                double density, std::uint64_t seed) {
  SplitMix64 rng = derive_stream(seed, 0);
  BipartiteGraph g{n_left, n_right, {}};
  for (std::uint32_t i = 0; i < n_left; ++i) {
    for (std::uint32_t j = 0; j < n_right; ++j) {
      if (rng.unit() < density) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

GeneratedInstance gen_scalable_instance(const GeneratorConfig& cfg) {
  if (cfg.n_rows == 0 || cfg.n_cols == 0) {
    throw Error("generator needs at least one row and one column");
  }
  if (!(cfg.density > 0.0) || cfg.density > 1.0) {
    throw Error("density must lie in (0, 1]");
  }
  if (!(cfg.perturb_lo > 0.0) || !(cfg.perturb_hi >= cfg.perturb_lo)) {
    throw Error("perturbation range must satisfy 0 < lo <= hi");
  }
  const std::size_t n = cfg.n_rows;
  const std::size_t m = cfg.n_cols;
  constexpr int kMaxAttempts = 100;
  constexpr int kMaxRounds = 20000;
  constexpr double kFitTol = 1e-13;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SplitMix64 rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(attempt));

    std::vector<std::vector<bool>> mask(n, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        mask[i][j] = rng.unit() < cfg.density;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < m; ++j) any = any || mask[i][j];
      if (!any) mask[i][rng.below(static_cast<std::uint64_t>(m))] = true;
    }
    for (std::size_t j = 0; j < m; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) any = any || mask[i][j];
      if (!any) mask[rng.below(static_cast<std::uint64_t>(n))][j] = true;
    }

    std::vector<double> r(n), c(m);
    double r_total = 0.0, c_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = 1.0 + rng.unit();
      r_total += r[i];
    }
    for (std::size_t j = 0; j < m; ++j) {
      c[j] = 1.0 + rng.unit();
      c_total += c[j];
    }
    for (std::size_t j = 0; j < m; ++j) c[j] *= r_total / c_total;

    DenseMatrix w(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (mask[i][j]) w[i][j] = 0.5 + rng.unit();
      }
    }

    bool fitted = false;
    for (int round = 0; round < kMaxRounds; ++round) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += w[i][j];
        double f = r[i] / s;
        for (std::size_t j = 0; j < m; ++j) w[i][j] *= f;
      }
      std::vector<double> cs = dense_col_sums(w);
      for (std::size_t j = 0; j < m; ++j) {
        double f = c[j] / cs[j];
        for (std::size_t i = 0; i < n; ++i) w[i][j] *= f;
      }
      double dev = 0.0;
      std::vector<double> rs = dense_row_sums(w);
      cs = dense_col_sums(w);
      for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::fabs(rs[i] - r[i]));
      for (std::size_t j = 0; j < m; ++j) dev = std::max(dev, std::fabs(cs[j] - c[j]));
      if (dev <= kFitTol) {
        fitted = true;
        break;
      }
    }
    if (!fitted) continue;

    // The fitted matrix's own marginals become the targets so that the
    // witness meets them exactly, not just to fitting tolerance.
    std::vector<double> row_targets = dense_row_sums(w);
    std::vector<double> col_targets = dense_col_sums(w);

    std::vector<double> u(n), v(m);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = cfg.perturb_lo + rng.unit() * (cfg.perturb_hi - cfg.perturb_lo);
    }
    for (std::size_t j = 0; j < m; ++j) {
      v[j] = cfg.perturb_lo + rng.unit() * (cfg.perturb_hi - cfg.perturb_lo);
    }

    std::vector<Entry> w_entries, a_entries;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!mask[i][j]) continue;
        Entry e{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                w[i][j]};
        w_entries.push_back(e);
        e.value = w[i][j] * u[i] * v[j];
        a_entries.push_back(e);
      }
    }
    return GeneratedInstance{
        SparseNonnegMatrix(static_cast<std::uint32_t>(n),
                           static_cast<std::uint32_t>(m), a_entries),
        SparseNonnegMatrix(static_cast<std::uint32_t>(n),
                           static_cast<std::uint32_t>(m), w_entries),
        std::move(row_targets), std::move(col_targets)};
  }
  throw DegenerateSupport(
      "no drawn support admitted the requested marginals after 100 attempts");
}

DenseMatrix to_dense(const SparseNonnegMatrix& a) {
  DenseMatrix d(a.n_rows(), std::vector<double>(a.n_cols(), 0.0));
  const auto& vals = a.values();
  for (std::size_t k = 0; k < vals.size(); ++k) {
    d[a.row_of()[k]][a.col_idx()[k]] = vals[k];
  }
  return d;
}

std::vector<double> dense_row_sums(const DenseMatrix& a) {
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (double x : a[i]) out[i] += x;
  }
  return out;
}

std::vector<double> dense_col_sums(const DenseMatrix& a) {
  if (a.empty()) return {};
  std::vector<double> out(a[0].size(), 0.0);
  for (const auto& row : a) {
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  }
  return out;
}

double dense_l1(const std::vector<double>& a, const std::vector<double>& b) {
  require_same_length(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double dense_l2(const std::vector<double>& a, const std::vector<double>& b) {
  require_same_length(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double dense_kl(const std::vector<double>& p, const std::vector<double>& q) {
  require_same_length(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (!(q[i] > 0.0)) return std::numeric_limits<double>::infinity();
      acc += p[i] * std::log(p[i] / q[i]);
    }
  }
  return acc;
}

double dense_matrix_kl(const DenseMatrix& m, const DenseMatrix& n, double h) {
  require_same_shape(m, n);
  if (!(h > 0.0)) throw Error("normalizer h must be strictly positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] > 0.0) {
        if (!(n[i][j] > 0.0)) return std::numeric_limits<double>::infinity();
        acc += m[i][j] * std::log(m[i][j] / n[i][j]);
      }
    }
  }
  return acc / h;
}

double dense_pinsker(const std::vector<double>& p,
                     const std::vector<double>& q) {
  double l1 = dense_l1(p, q);
  return 0.5 * l1 * l1;
}

double dense_gen_pinsker(const std::vector<double>& p,
                         const std::vector<double>& q, double theta) {
  require_same_length(p, q);
  if (!(theta > 0.0)) {
    throw NonpositiveTheta("theta must be strictly positive");
  }
  double a_theta = std::log1p(theta) / theta;
  double abs_part = 0.0, quad_part = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0 && q[i] == 0.0) continue;
    if (q[i] > (1.0 + theta) * p[i]) {
      abs_part += std::fabs(q[i] - p[i]);
    } else {
      double d = q[i] - p[i];
      quad_part += d * d / p[i];
    }
  }
  return (1.0 - a_theta) * (abs_part + quad_part / theta);
}

double dense_hellinger(const std::vector<double>& p,
                       const std::vector<double>& q) {
  require_same_length(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace oracles
}  // namespace sinkscale
