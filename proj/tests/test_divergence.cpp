#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "sinkscale/divergence.hpp"
#include "sinkscale/errors.hpp"
#include "sinkscale/oracles.hpp"
#include "sinkscale/prng.hpp"
#include "sinkscale/sparse.hpp"

using namespace sinkscale;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Distribution dist(std::vector<double> v) { return Distribution(std::move(v)); }

std::vector<double> wide_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g;
  g.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(lo + (hi - lo) * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(n));
  }
  return g;
}

}  // namespace

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(dist({0.5, 0.5}));
  CHECK_NOTHROW(dist({1.0, 0.0}));
  CHECK_NOTHROW(dist({0.25, 0.25, 0.25, 0.25}));
  CHECK_THROWS_AS(dist({0.5, -0.5, 1.0}), InvalidDistribution);
  CHECK_THROWS_AS(dist({0.5, 0.4}), InvalidDistribution);
  CHECK_THROWS_AS(dist({0.5, 0.5 + 1e-9}), InvalidDistribution);
  CHECK_THROWS_AS(dist({}), InvalidDistribution);
  CHECK_THROWS_AS(dist({std::nan(""), 1.0}), InvalidDistribution);
}

TEST_CASE("theta constants") {
  ThetaConstants one = theta_constants(1.0);
  CHECK(one.a_theta == 0.6931471805599453);
  CHECK(one.b_theta == 0.3068528194400547);

  ThetaConstants em1 = theta_constants(std::exp(1.0) - 1.0);
  CHECK(em1.a_theta == doctest::Approx(1.0 / (std::exp(1.0) - 1.0))
                           .epsilon(1e-15));

  ThetaConstants tiny = theta_constants(1e-6);
  CHECK(std::fabs(tiny.a_theta - 1.0) < 1e-5);
  CHECK(std::fabs(tiny.b_theta - 0.5) < 1e-5);

  CHECK_THROWS_AS(theta_constants(0.0), NonpositiveTheta);
  CHECK_THROWS_AS(theta_constants(-1.0), NonpositiveTheta);
  CHECK_THROWS_AS(theta_constants(kInf), NonpositiveTheta);

  for (double theta : {0.1, 0.25, 1.0, 2.0, 4.0, 10.0}) {
    ThetaConstants tc = theta_constants(theta);
    CHECK(tc.a_theta > 1.0 - theta / 2.0);
    CHECK(tc.a_theta < (1.0 + theta / 2.0) / (1.0 + theta));
    CHECK(tc.b_theta > 1.0 / (2.0 * (1.0 + theta)));
    CHECK(tc.b_theta < 0.5);
  }
}

TEST_CASE("kl divergence") {
  CHECK(kl_divergence(dist({0.5, 0.5}), dist({0.5, 0.5})) == 0.0);
  CHECK(kl_divergence(dist({0.5, 0.5}), dist({0.25, 0.75})) ==
        doctest::Approx(0.14384103622589042).epsilon(1e-15));
  CHECK(kl_divergence(dist({1.0, 0.0}), dist({0.0, 1.0})) == kInf);
  CHECK(kl_divergence(dist({0.0, 1.0}), dist({0.5, 0.5})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(kl_divergence(dist({1.0}), dist({0.5, 0.5})),
                  LengthMismatch);

  // Positive whenever the distributions differ materially.
  CHECK(kl_divergence(dist({0.5 + 1e-6, 0.5 - 1e-6}), dist({0.5, 0.5})) > 0.0);
}

TEST_CASE("matrix kl") {
  SparseNonnegMatrix ones(2, 2,
                          {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  SparseNonnegMatrix twos(2, 2,
                          {{0, 0, 2.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 2.0}});
  CHECK(matrix_kl(ones, ones, 2.0) == 0.0);
  CHECK(matrix_kl(ones, twos, 2.0) ==
        doctest::Approx(-1.3862943611198906).epsilon(1e-15));

  SparseNonnegMatrix narrower(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
  CHECK(matrix_kl(ones, narrower, 2.0) == kInf);
  // The other containment direction stays finite: missing m-entries
  // contribute zero.
  CHECK(std::isfinite(matrix_kl(narrower, ones, 2.0)));

  SparseNonnegMatrix wide(2, 3, {{0, 0, 1.0}, {1, 2, 1.0}});
  CHECK_THROWS_AS(matrix_kl(ones, wide, 2.0), DimensionMismatch);
  CHECK_THROWS_AS(matrix_kl(ones, ones, 0.0), Error);
}

TEST_CASE("pinsker lower bound") {
  CHECK(pinsker_lower_bound(dist({0.5, 0.5}), dist({0.5, 0.5})) == 0.0);
  CHECK(pinsker_lower_bound(dist({0.5, 0.5}), dist({0.25, 0.75})) == 0.125);
  CHECK(pinsker_lower_bound(dist({1.0, 0.0}), dist({0.0, 1.0})) == 2.0);
}

TEST_CASE("generalized pinsker right-hand side") {
  CHECK(gen_pinsker_rhs(dist({0.5, 0.5}), dist({0.5, 0.5}), 1.0) == 0.0);
  CHECK(gen_pinsker_rhs(dist({0.5, 0.5}), dist({0.25, 0.75}), 1.0) ==
        0.07671320486001368);
  CHECK_THROWS_AS(gen_pinsker_rhs(dist({1.0}), dist({1.0}), 0.0),
                  NonpositiveTheta);
  CHECK_THROWS_AS(gen_pinsker_rhs(dist({1.0}), dist({0.5, 0.5}), 1.0),
                  LengthMismatch);

  // An index with p_i = 0 and q_i > 0 lands on the absolute side, so the
  // value stays finite.
  double v = gen_pinsker_rhs(dist({0.0, 1.0}), dist({0.5, 0.5}), 1.0);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx((1.0 - std::log(2.0)) * 0.75).epsilon(1e-15));
  CHECK(kl_divergence(dist({0.0, 1.0}), dist({0.5, 0.5})) >= v);
}

TEST_CASE("boundary ties contribute the same value on either side") {
  // q_0 = (1 + theta) p_0 exactly; at the boundary theta p_i equals both
  // the absolute summand and (1/theta)(q-p)^2/p.
  for (double theta : {0.5, 1.0, 2.0}) {
    const double p0 = 0.25;
    const double q0 = (1.0 + theta) * p0;
    Distribution p = dist({p0, 1.0 - p0});
    Distribution q = dist({q0, 1.0 - q0});
    const double a_theta = std::log1p(theta) / theta;
    const double quad_side =
        (q0 - p0) * (q0 - p0) / p0 / theta +
        (q.p()[1] - p.p()[1]) * (q.p()[1] - p.p()[1]) / p.p()[1] / theta;
    const double abs_side =
        std::fabs(q0 - p0) +
        (q.p()[1] - p.p()[1]) * (q.p()[1] - p.p()[1]) / p.p()[1] / theta;
    CHECK(quad_side == doctest::Approx(abs_side).epsilon(1e-15));
    CHECK(gen_pinsker_rhs(p, q, theta) ==
          doctest::Approx((1.0 - a_theta) * quad_side).epsilon(1e-14));
  }
}

TEST_CASE("hellinger distance") {
  CHECK(hellinger_distance(dist({0.5, 0.5}), dist({0.5, 0.5})) == 0.0);
  CHECK(hellinger_distance(dist({0.5, 0.5}), dist({0.25, 0.75})) ==
        doctest::Approx(0.26105238444010315).epsilon(1e-15));
  CHECK(hellinger_distance(dist({1.0, 0.0}), dist({0.0, 1.0})) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("spike family frozen values at n=100") {
  const std::size_t n = 100;
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  std::vector<double> q(n, 1.0 / static_cast<double>(n) -
                               1.0 / (99.0 * std::sqrt(100.0)));
  q[0] = 1.0 / static_cast<double>(n) + 1.0 / std::sqrt(100.0);
  Distribution dp(p), dq(q);

  CHECK(pinsker_lower_bound(dp, dq) ==
        doctest::Approx(0.020000000000000014).epsilon(1e-14));
  CHECK(gen_pinsker_rhs(dp, dq, 1.0) ==
        doctest::Approx(0.03378480537269289).epsilon(1e-13));
  CHECK(kl_divergence(dp, dq) ==
        doctest::Approx(0.08143969287044195).epsilon(1e-12));
  CHECK(gen_pinsker_rhs(dp, dq, 1.0) / pinsker_lower_bound(dp, dq) ==
        doctest::Approx(1.6892402686346433).epsilon(1e-12));
}

TEST_CASE("theta fact grids have no violations") {
  for (double theta : {0.25, 1.0, 4.0}) {
    std::vector<double> grid = wide_grid(-1.0 + 1e-9, 100.0, 10000);
    grid.push_back(theta);
    grid.push_back(0.0);
    grid.push_back(-0.999999999);
    CheckReport report = verify_theta_facts(theta, grid);
    CHECK(report.violations == 0);
    CHECK(report.checked >= grid.size());
    CHECK(report.worst_slack >= -1e-12);
  }
}

TEST_CASE("easier inequality chain holds strictly on a grid") {
  std::vector<double> grid = wide_grid(1e-9, 100.0, 10000);
  for (double z : {1e-8, 0.01, 1.0, 10.0}) grid.push_back(z);
  CheckReport report = verify_easier_inequalities(grid);
  CHECK(report.violations == 0);
  CHECK(report.checked == 3 * grid.size());
}

TEST_CASE("easier inequality frozen spot values") {
  CHECK((1.0 + 1.0) * std::log1p(1.0) == 1.3862943611198906);
  CHECK((1.0 + 10.0) * std::log1p(10.0) == 26.376848000782076);
  // z = 1: margins of the three strict inequalities.
  CHECK(1.0 + 0.5 - (1.0 + 1.0) * std::log1p(1.0) ==
        doctest::Approx(0.11370563888010943).epsilon(1e-15));
  CHECK((1.0 + 1.0) * std::log1p(1.0) - 1.0 ==
        doctest::Approx(0.3862943611198906).epsilon(1e-15));
  CHECK(std::log1p(1.0) - (1.0 - 0.5) ==
        doctest::Approx(0.1931471805599453).epsilon(1e-15));
}

TEST_CASE("divergence inequalities on random dirichlet pairs") {
  const std::vector<double> thetas{0.1, 0.5, 1.0, 2.0, 10.0};
  CheckReport report;
  for (std::uint64_t idx = 0; idx < 10000; ++idx) {
    SplitMix64 rng = derive_stream(2024, idx);
    const std::size_t k = 2 + static_cast<std::size_t>(rng.below(63));
    Distribution p(rng.dirichlet(k));
    Distribution q(rng.dirichlet(k));
    report.merge(check_divergence_inequalities(p, q, thetas));
  }
  CHECK(report.violations == 0);
  CHECK(report.checked == 10000 * (thetas.size() + 4));
}

TEST_CASE("rhs at theta 1 stays within the frozen band around hellinger") {
  for (std::uint64_t idx = 0; idx < 10000; ++idx) {
    SplitMix64 rng = derive_stream(777, idx);
    const std::size_t k = 2 + static_cast<std::size_t>(rng.below(63));
    Distribution p(rng.dirichlet(k));
    Distribution q(rng.dirichlet(k));
    const double hell = hellinger_distance(p, q);
    const double ratio = gen_pinsker_rhs(p, q, 1.0) / (hell * hell);
    CHECK(ratio >= 0.162);
    CHECK(ratio <= 3.552);
  }
}

TEST_CASE("library divergences match the dense reference loops") {
  for (std::uint64_t idx = 0; idx < 200; ++idx) {
    SplitMix64 rng = derive_stream(31, idx);
    const std::size_t k = 2 + static_cast<std::size_t>(rng.below(31));
    std::vector<double> pv = rng.dirichlet(k);
    std::vector<double> qv = rng.dirichlet(k);
    Distribution p(pv), q(qv);
    CHECK(kl_divergence(p, q) ==
          doctest::Approx(oracles::dense_kl(pv, qv)).epsilon(1e-12));
    CHECK(pinsker_lower_bound(p, q) ==
          doctest::Approx(oracles::dense_pinsker(pv, qv)).epsilon(1e-12));
    CHECK(hellinger_distance(p, q) ==
          doctest::Approx(oracles::dense_hellinger(pv, qv)).epsilon(1e-12));
    for (double theta : {0.1, 1.0, 10.0}) {
      CHECK(gen_pinsker_rhs(p, q, theta) ==
            doctest::Approx(oracles::dense_gen_pinsker(pv, qv, theta))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("check report bookkeeping") {
  CheckReport r;
  CHECK(r.checked == 0);
  CHECK(r.worst_slack == kInf);
  r.note(0.5, 1e-12);
  r.note(-1e-13, 1e-12);
  CHECK(r.checked == 2);
  CHECK(r.violations == 0);
  CHECK(r.worst_slack == -1e-13);
  r.note(-1.0, 1e-12);
  CHECK(r.violations == 1);
  CHECK(r.worst_slack == -1.0);

  CheckReport other;
  other.note(kInf, 1e-12);
  r.merge(other);
  CHECK(r.checked == 4);
  CHECK(r.violations == 1);
  CHECK(r.worst_slack == -1.0);
}
