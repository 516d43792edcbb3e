#include <cmath>

#include <doctest.h>

#include "mirs/constructions.hpp"
#include "mirs/engine.hpp"
#include "mirs/errors.hpp"
#include "mirs/linalg.hpp"
#include "mirs/matrix.hpp"

using namespace mirs;

TEST_SUITE("constructions") {

TEST_CASE("projector-rotation pair entries") {
  const double t = 1.25;
  MatrixSet s = pj_matrices(1.0 / 3.0, t);
  REQUIRE(s.dim == 3);
  REQUIRE(s.size() == 2);
  CHECK(approx_equal(s.members[0],
                     Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                     0.0));
  const double c = std::cos(t), sn = std::sin(t);
  CHECK(approx_equal(
      s.members[1],
      Matrix::from_rows({{1, sn, c - 1}, {0, c, -sn}, {0, sn, c}}), 1e-15));
  // A1 is the identity plus a rotation acting on the last two coordinates
  // conjugated into a shear frame; its first column is preserved.
  CHECK(s.members[1].at(0, 0) == 1.0);

  CHECK_THROWS_AS(pj_matrices(0.2, t), AlphaOutOfRange);
  CHECK_THROWS_AS(pj_matrices(0.5, t), AlphaOutOfRange);
}

TEST_CASE("closed form for the basic witness product") {
  // A0 A1^n A0 collapses to [[1, sin(n t), 0], [0, cos(n t), 0], [0,0,0]].
  const double t = 0.83;
  MatrixSet s = pj_matrices(1.0 / 3.0, t);
  for (int n : {1, 2, 5, 9}) {
    Matrix p = s.members[0];
    for (int k = 0; k < n; ++k) p = p * s.members[1];
    p = p * s.members[0];
    Matrix expect = Matrix::from_rows(
        {{1, std::sin(n * t), 0}, {0, std::cos(n * t), 0}, {0, 0, 0}});
    CHECK(approx_equal(p, expect, 1e-12));
  }
}

TEST_CASE("pair lift structure and the explicit 6x6 pair") {
  const double t = 1.9;
  MatrixSet pj = pj_matrices(1.0 / 3.0, t);
  PairLift lift = pair_lift(pj);
  REQUIRE(lift.m == 2);
  REQUIRE(lift.d == 3);
  MatrixSet ls = lift.as_set();
  REQUIRE(ls.dim == 6);

  // B1 = blockdiag(A0, A1); B0 swaps the two register blocks.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(ls.members[1].at(i, j) == pj.members[0].at(i, j));
      CHECK(ls.members[1].at(3 + i, 3 + j) == pj.members[1].at(i, j));
      CHECK(ls.members[0].at(i, 3 + j) == (i == j ? 1.0 : 0.0));
      CHECK(ls.members[0].at(3 + i, j) == (i == j ? 1.0 : 0.0));
      CHECK(ls.members[0].at(i, j) == 0.0);
      CHECK(ls.members[0].at(3 + i, 3 + j) == 0.0);
    }

  // The hand-written 6x6 pair is exactly this lift.
  MatrixSet harvey = harvey_pair(t);
  CHECK(approx_equal(harvey.members[0], ls.members[0], 0.0));
  CHECK(approx_equal(harvey.members[1], ls.members[1], 1e-15));

  // One-member lift degenerates to {identity-like B0, the member itself}.
  PairLift single = pair_lift(make_set("one", {Matrix::identity(2).scaled(0.5)}));
  CHECK(approx_equal(single.B0, Matrix::identity(2), 0.0));
}

TEST_CASE("kronecker product and power sets") {
  const double t = 0.61;
  MatrixSet pj = pj_matrices(1.0 / 3.0, t);
  MatrixSet prod = kron_product_set(pj, pj);
  REQUIRE(prod.dim == 9);
  REQUIRE(prod.size() == 4);
  CHECK(prod.claimed_jsr.has_value());
  CHECK(*prod.claimed_jsr == doctest::Approx(1.0));
  CHECK(approx_equal(prod.members[1], kron(pj.members[0], pj.members[1]), 0.0));

  MatrixSet pw = kron_power_set(pj, 2);
  REQUIRE(pw.dim == 9);
  REQUIRE(pw.size() == 2);
  CHECK(approx_equal(pw.members[1], kron(pj.members[1], pj.members[1]), 0.0));
  CHECK_THROWS_AS(kron_power_set(pj, 0), DegenerateInput);
  CHECK_THROWS_AS(kron_power_set(pj, 4), SizeOverflow);  // 81 > 64
}

TEST_CASE("block combination assembles members in place") {
  MatrixSet u = make_set("u", {Matrix::from_rows({{0.5}})});
  MatrixSet l = make_set("l", {Matrix::from_rows({{0.25}})});
  BlockCombineSpec spec =
      make_block_combine_spec(u, l, {Matrix::from_rows({{3.0}})});
  CHECK(spec.K0 == doctest::Approx(3.0));
  MatrixSet c = block_combine(spec);
  REQUIRE(c.dim == 2);
  CHECK(approx_equal(c.members[0], Matrix::from_rows({{0.5, 3.0}, {0, 0.25}}),
                     0.0));

  // Mismatched member counts are rejected.
  MatrixSet two = make_set("two", {Matrix::from_rows({{1.0}}),
                                   Matrix::from_rows({{0.5}})});
  CHECK_THROWS_AS(make_block_combine_spec(u, two, {Matrix::from_rows({{1.0}})}),
                  DimensionMismatch);
}

TEST_CASE("triangular split recombines to the original pair") {
  const double t = 2.2;
  MatrixSet pj = pj_matrices(1.0 / 3.0, t);
  BlockCombineSpec split = pj_triangular_split(1.0 / 3.0, t);
  MatrixSet recombined = block_combine(split);
  REQUIRE(recombined.dim == 3);
  for (std::size_t i = 0; i < pj.size(); ++i)
    CHECK(approx_equal(recombined.members[i], pj.members[i], 0.0));
  // Diagonal blocks are contractive: the upper is the 1x1 [1], the lower a
  // rotation-like 2x2 of norm 1.
  for (const auto& m : split.upper.members) CHECK(op_norm(m) <= 1.0 + 1e-12);
  for (const auto& m : split.lower.members) CHECK(op_norm(m) <= 1.0 + 1e-12);
}

TEST_CASE("triangular shear family endpoints") {
  MatrixSet g = gz_family(0.5, 3);
  REQUIRE(g.size() == 3);
  CHECK(approx_equal(g.members[0], Matrix::identity(2), 0.0));
  CHECK(approx_equal(g.members[2], Matrix::from_rows({{1, 1}, {0, 0}}), 0.0));
  // Middle point t = 1/2 with exponent 1/(1-alpha) = 2.
  CHECK(approx_equal(g.members[1], Matrix::from_rows({{1, 0.5}, {0, 0.75}}),
                     1e-15));
  CHECK_THROWS_AS(gz_family(0.0, 4), AlphaOutOfRange);
  CHECK_THROWS_AS(gz_family(1.0, 4), AlphaOutOfRange);
  CHECK_THROWS_AS(gz_family(0.5, 1), DegenerateInput);
}

TEST_CASE("lifted sequence interleaves the source sequence") {
  // Scalar members make the source sequence easy to reason about:
  // a_n = max over words of the entrywise product of the scales.
  MatrixSet s = make_set("pair", {Matrix::identity(2).scaled(1.25),
                                  Matrix::identity(2).scaled(0.8)});
  PairLift lift = pair_lift(s);
  MirsResult a = compute_mirs(s, 12);
  MirsResult b = compute_mirs(lift.as_set(), 12);
  // Upper sandwich: the lift can never beat the running maximum of the
  // source (with the empty product counting as 1).
  for (int n = 1; n <= 12; ++n) {
    double run_max = 1.0;
    for (int k = 1; k <= n; ++k) run_max = std::max(run_max, a.at(k));
    CHECK(b.at(n) <= run_max * (1 + 1e-12));
  }
}

}  // TEST_SUITE
