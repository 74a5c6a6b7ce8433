#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sinkscale/errors.hpp"
#include "sinkscale/sparse.hpp"

using namespace sinkscale;

namespace {

SparseNonnegMatrix lopsided_2x2() {
  return SparseNonnegMatrix(2, 2,
                            {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
}

}  // namespace

TEST_CASE("entries are canonicalized regardless of input order") {
  SparseNonnegMatrix a(2, 3,
                       {{1, 2, 5.0}, {0, 1, 2.0}, {1, 0, 3.0}, {0, 2, 4.0}});
  CHECK(a.n_rows() == 2);
  CHECK(a.n_cols() == 3);
  CHECK(a.nnz() == 4);
  CHECK(a.values() == std::vector<double>{2.0, 4.0, 3.0, 5.0});
  CHECK(a.col_idx() == std::vector<std::uint32_t>{1, 2, 0, 2});
  CHECK(a.row_of() == std::vector<std::uint32_t>{0, 0, 1, 1});
  CHECK(a.row_ptr() == std::vector<std::uint32_t>{0, 2, 4});
  CHECK(a.col_ptr() == std::vector<std::uint32_t>{0, 1, 2, 4});
  CHECK(a.csc_perm() == std::vector<std::uint32_t>{2, 0, 1, 3});
  CHECK(a.min_value() == 2.0);
  CHECK(a.max_value() == 5.0);
  CHECK(a.entry(2).row == 1);
  CHECK(a.entry(2).col == 0);
  CHECK(a.entry(2).value == 3.0);
}

TEST_CASE("constructor rejects malformed entry lists") {
  CHECK_THROWS_AS(SparseNonnegMatrix(0, 2, {}), InvalidMatrix);
  CHECK_THROWS_AS(SparseNonnegMatrix(2, 2, {{2, 0, 1.0}}), InvalidMatrix);
  CHECK_THROWS_AS(SparseNonnegMatrix(2, 2, {{0, 2, 1.0}}), InvalidMatrix);
  CHECK_THROWS_AS(SparseNonnegMatrix(2, 2, {{0, 0, 0.0}}), InvalidMatrix);
  CHECK_THROWS_AS(SparseNonnegMatrix(2, 2, {{0, 0, -1.0}}), InvalidMatrix);
  CHECK_THROWS_AS(SparseNonnegMatrix(2, 2, {{0, 0, std::nan("")}}),
                  InvalidMatrix);
  CHECK_THROWS_AS(SparseNonnegMatrix(2, 2, {{0, 0, HUGE_VAL}}), InvalidMatrix);
  CHECK_THROWS_AS(
      SparseNonnegMatrix(2, 2, {{0, 1, 1.0}, {1, 0, 2.0}, {0, 1, 3.0}}),
      InvalidMatrix);
  try {
    SparseNonnegMatrix(2, 2, {{0, 1, 1.0}, {1, 0, 2.0}, {0, 1, 3.0}});
  } catch (const InvalidMatrix& e) {
    CHECK(std::string(e.what()).find("(1, 2)") != std::string::npos);
  }
}

TEST_CASE("row and column sums") {
  SparseNonnegMatrix a = lopsided_2x2();
  CHECK(row_sums(a) == std::vector<double>{2.0, 3.0});
  CHECK(col_sums(a) == std::vector<double>{2.0, 3.0});

  SparseNonnegMatrix id(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
  CHECK(row_sums(id) == std::vector<double>{1.0, 1.0});
  CHECK(col_sums(id) == std::vector<double>{1.0, 1.0});

  SparseNonnegMatrix gap(3, 2, {{0, 0, 1.0}, {2, 1, 4.0}});
  CHECK(row_sums(gap) == std::vector<double>{1.0, 0.0, 4.0});

  CHECK(striped_total(a.values()) == 5.0);
}

TEST_CASE("row and column sums agree through either representation") {
  SparseNonnegMatrix a(
      3, 4,
      {{0, 0, 0.125}, {0, 3, 2.5}, {1, 1, 0.75}, {1, 2, 1.0}, {1, 3, 0.5},
       {2, 0, 3.0}, {2, 2, 0.0625}});
  std::vector<double> rs = row_sums(a);
  std::vector<double> cs = col_sums(a);
  double total_r = 0.0, total_c = 0.0;
  for (double x : rs) total_r += x;
  for (double x : cs) total_c += x;
  CHECK(total_r == doctest::Approx(total_c).epsilon(1e-14));
  // These sums have exact binary representations, so each side is exact.
  CHECK(rs == std::vector<double>{2.625, 2.25, 3.0625});
  CHECK(cs == std::vector<double>{3.125, 0.75, 1.0625, 3.0});
}

TEST_CASE("with_values keeps the pattern and swaps values") {
  SparseNonnegMatrix a = lopsided_2x2();
  SparseNonnegMatrix b = a.with_values({4.0, 3.0, 2.0, 1.0});
  CHECK(b.values() == std::vector<double>{4.0, 3.0, 2.0, 1.0});
  CHECK(b.col_idx() == a.col_idx());
  CHECK(b.row_ptr() == a.row_ptr());
  CHECK(b.min_value() == 1.0);
  CHECK(b.max_value() == 4.0);
  CHECK_THROWS_AS(a.with_values({1.0}), LengthMismatch);
  CHECK_THROWS_AS(a.with_values({1.0, 2.0, 3.0, -4.0}), InvalidMatrix);
}

TEST_CASE("target vectors demand positivity and equal sums") {
  CHECK_NOTHROW(TargetVectors({1.0, 1.0}, {1.0, 1.0}));
  CHECK_NOTHROW(TargetVectors({1.0, 1.0}, {2.0 + 1e-10}));
  CHECK_THROWS_AS(TargetVectors({1.0, 0.0}, {1.0}), InvalidTarget);
  CHECK_THROWS_AS(TargetVectors({1.0, -1.0}, {0.0}), InvalidTarget);
  CHECK_THROWS_AS(TargetVectors({}, {}), InvalidTarget);
  CHECK_THROWS_AS(TargetVectors({1.0, 1.0}, {2.0 + 1e-7}), TargetSumMismatch);
  CHECK_THROWS_AS(TargetVectors({1.0}, {HUGE_VAL}), InvalidTarget);
}

TEST_CASE("validate_instance computes the derived parameters") {
  SUBCASE("identity pattern") {
    SparseNonnegMatrix id(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    ScalingInstance inst = validate_instance(id, TargetVectors({1, 1}, {1, 1}));
    CHECK(inst.params().h == 2.0);
    CHECK(inst.params().rho == 1.0);
    CHECK(inst.params().nu == 1.0);
    CHECK(inst.params().delta_cols == 1);
  }
  SUBCASE("lopsided matrix") {
    ScalingInstance inst =
        validate_instance(lopsided_2x2(), TargetVectors({1, 1}, {1, 1}));
    CHECK(inst.params().h == 2.0);
    CHECK(inst.params().rho == 1.0);
    CHECK(inst.params().nu == 0.5);
    CHECK(inst.params().delta_cols == 2);
  }
  SUBCASE("column targets are rescaled onto the row sum") {
    SparseNonnegMatrix full(2, 2,
                            {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
    ScalingInstance inst = validate_instance(
        full, TargetVectors({2.0, 2.0}, {1.0, 3.0 + 1e-9}));
    CHECK(inst.params().h == 4.0);
    CHECK(inst.col_targets()[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(striped_total(inst.col_targets()) ==
          doctest::Approx(4.0).epsilon(1e-14));
    CHECK(inst.params().rho == doctest::Approx(3.0).epsilon(1e-9));
  }
}

TEST_CASE("validate_instance rejects empty lines and bad shapes") {
  SparseNonnegMatrix no_row2(2, 2, {{0, 0, 1.0}, {0, 1, 1.0}});
  CHECK_THROWS_AS(validate_instance(no_row2, TargetVectors({1, 1}, {1, 1})),
                  ZeroRowOrColumn);
  try {
    validate_instance(no_row2, TargetVectors({1, 1}, {1, 1}));
  } catch (const ZeroRowOrColumn& e) {
    CHECK(e.axis() == ZeroRowOrColumn::Axis::kRow);
    CHECK(e.index() == 2);
    CHECK(std::string(e.what()) == "row 2 has no positive entries");
  }

  SparseNonnegMatrix no_col1(2, 2, {{0, 1, 1.0}, {1, 1, 1.0}});
  try {
    validate_instance(no_col1, TargetVectors({1, 1}, {1, 1}));
  } catch (const ZeroRowOrColumn& e) {
    CHECK(e.axis() == ZeroRowOrColumn::Axis::kCol);
    CHECK(e.index() == 1);
  }

  CHECK_THROWS_AS(
      validate_instance(lopsided_2x2(), TargetVectors({1, 1, 2}, {2, 2})),
      DimensionMismatch);
  CHECK_THROWS_AS(validate_instance(lopsided_2x2(), TargetVectors({2}, {1, 1})),
                  DimensionMismatch);
}

TEST_CASE("iteration budget frozen examples") {
  InstanceParams roth{2.0, 1.0, 0.5, 2};
  CHECK(iteration_budget(roth, std::log(9.0)) == 1);

  InstanceParams id{2.0, 1.0, 1.0, 1};
  CHECK(iteration_budget(id, 0.1) == 11);

  const double delta = 0.1 * 0.1 / (2.0 * 2.0 * 2.0);
  CHECK(iteration_budget(roth, delta) == 1758);
}

TEST_CASE("iteration budget edge behavior") {
  InstanceParams p{2.0, 1.0, 0.5, 2};
  CHECK_THROWS_AS(iteration_budget(p, 0.0), NonpositiveDelta);
  CHECK_THROWS_AS(iteration_budget(p, -1.0), NonpositiveDelta);
  CHECK(iteration_budget(p, 1e-300) == (1ULL << 62));
  CHECK(iteration_budget(p, 1e9) == 1);

  CHECK(iteration_budget(p, 0.2) <= iteration_budget(p, 0.1));
  InstanceParams denser{2.0, 1.0, 0.5, 7};
  CHECK(iteration_budget(denser, 0.1) >= iteration_budget(p, 0.1));
  InstanceParams flatter{2.0, 1.0, 0.9, 2};
  CHECK(iteration_budget(flatter, 0.1) <= iteration_budget(p, 0.1));
}

TEST_CASE("stored values sit between nu times max and max") {
  SparseNonnegMatrix a(2, 3,
                       {{0, 0, 0.25}, {0, 2, 8.0}, {1, 1, 2.0}, {1, 2, 1.0}});
  ScalingInstance inst =
      validate_instance(a, TargetVectors({5.0, 5.0}, {2.0, 3.0, 5.0}));
  const double nu = inst.params().nu;
  CHECK(nu == 0.25 / 8.0);
  for (double v : a.values()) {
    CHECK(v >= nu * a.max_value());
    CHECK(v <= a.max_value());
  }
}
