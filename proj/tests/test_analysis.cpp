#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "mirs/analysis.hpp"
#include "mirs/constructions.hpp"
#include "mirs/diophantine.hpp"
#include "mirs/engine.hpp"
#include "mirs/errors.hpp"
#include "mirs/matrix.hpp"

using namespace mirs;

namespace {

// Synthetic sequence a_n = c * n^alpha with chosen certificates.
MirsResult synthetic(double c, double alpha, int horizon) {
  MirsResult r;
  r.set_label = "synthetic";
  r.horizon = horizon;
  for (int n = 1; n <= horizon; ++n) {
    r.values.push_back(c * std::pow(n, alpha));
    r.certificates.push_back(Certificate{Cert::Exact, 0, 0});
    r.witnesses.emplace_back(static_cast<std::size_t>(n), 0);
  }
  return r;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("exponent fit recovers a pure power law") {
  MirsResult r = synthetic(3.0, 1.5, 400);
  GrowthFit fit = fit_exponent(r);
  CHECK(fit.window_lo == 100);
  CHECK(fit.window_hi == 400);
  CHECK(fit.exponent == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(fit.envelope_constant == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.max_abs_residual < 1e-9);

  GrowthFit windowed = fit_exponent(r, 10, 100);
  CHECK(windowed.exponent == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("fit refuses unusable windows") {
  // Too few points.
  CHECK_THROWS_AS(fit_exponent(synthetic(1.0, 1.0, 8)), WindowTooSmall);
  // Uncertified entries inside the window are not acceptable evidence.
  MirsResult r = synthetic(1.0, 1.0, 100);
  for (int n = 60; n <= 100; ++n)
    r.certificates[static_cast<std::size_t>(n - 1)] =
        Certificate{Cert::LowerBound, 0, 0};
  CHECK_THROWS_AS(fit_exponent(r), WindowTooSmall);
  // A window confined to the certified prefix still works.
  CHECK(fit_exponent(r, 10, 59).exponent == doctest::Approx(1.0).epsilon(1e-9));
  // Nonpositive values cannot be log-fit.
  MirsResult z = synthetic(1.0, 1.0, 50);
  z.values[30] = 0.0;
  CHECK_THROWS_AS(fit_exponent(z), DegenerateInput);
}

TEST_CASE("regularity report on a linear sequence") {
  MirsResult r = synthetic(2.0, 1.0, 64);  // a_n = 2n
  RegularityReport rep = regularity_report(r, {2, 3});
  CHECK(rep.exact_prefix == 64);
  CHECK(rep.min_step_ratio == doctest::Approx(64.0 / 63.0).epsilon(1e-12));
  CHECK(rep.max_step_ratio == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(rep.rv_table.size() == 2);
  CHECK(rep.rv_table[0].first == 2);
  CHECK(rep.rv_table[0].second == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.rv_table[1].second == doctest::Approx(3.0).epsilon(1e-12));
  // Nondecreasing sequence: the weak-monotonicity constant is 1.
  CHECK(rep.weakly_increasing_kappa == doctest::Approx(1.0).epsilon(1e-12));

  MirsResult tiny = synthetic(1.0, 1.0, 3);
  CHECK_THROWS_AS(regularity_report(tiny), InsufficientExactPrefix);
}

TEST_CASE("coupling sequence of a scalar shear is exactly linear") {
  // Members [[1, 1], [0, 1]]: products give alpha_n = n in the top-right.
  MatrixSet u = make_set("u", {Matrix::from_rows({{1.0}})});
  MatrixSet l = make_set("l", {Matrix::from_rows({{1.0}})});
  BlockCombineSpec spec =
      make_block_combine_spec(u, l, {Matrix::from_rows({{1.0}})});
  CouplingResult cr = coupling_sequence(spec, 12);
  REQUIRE(cr.alpha.size() == 12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(cr.alpha[static_cast<std::size_t>(n - 1)] ==
          doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    CHECK(cr.ahat[static_cast<std::size_t>(n - 1)] ==
          doctest::Approx(static_cast<double>(n) + 1.0).epsilon(1e-12));
  }
  CHECK(cr.subadd_max_violation <= 1e-12);
  CHECK(cr.sandwich_lo_violation <= 1e-12);
  CHECK(cr.sandwich_hi_violation <= 1e-12);
  CHECK(cr.exact_prefix == 12);
  CHECK(cr.sup_upper_norm == doctest::Approx(1.0));
  CHECK(cr.sup_lower_norm == doctest::Approx(1.0));
}

TEST_CASE("coupling sequence vanishes without couplers") {
  MatrixSet u = make_set("u", {Matrix::from_rows({{0.5}})});
  MatrixSet l = make_set("l", {Matrix::from_rows({{0.5}})});
  BlockCombineSpec spec =
      make_block_combine_spec(u, l, {Matrix::from_rows({{0.0}})});
  CouplingResult cr = coupling_sequence(spec, 8);
  for (double a : cr.alpha) CHECK(a == 0.0);
  // Without coupling the product norm is just the diagonal decay.
  for (int n = 1; n <= 8; ++n)
    CHECK(cr.ahat[static_cast<std::size_t>(n - 1)] ==
          doctest::Approx(std::pow(0.5, n)).epsilon(1e-12));
}

TEST_CASE("coupling requires contractive diagonal blocks") {
  MatrixSet u = make_set("u", {Matrix::from_rows({{2.0}})});
  MatrixSet l = make_set("l", {Matrix::from_rows({{0.5}})});
  BlockCombineSpec spec =
      make_block_combine_spec(u, l, {Matrix::from_rows({{1.0}})});
  CHECK_THROWS_AS(coupling_sequence(spec, 5), PreconditionNormExceeded);
}

TEST_CASE("jsr bracket on sets with known radius") {
  JsrBounds ident = jsr_bounds(make_set("id", {Matrix::identity(2)}), 6);
  CHECK(ident.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ident.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ident.exact_levels == 6);

  JsrBounds two = jsr_bounds(make_set("two", {Matrix::identity(2).scaled(2.0)}), 6);
  CHECK(two.lower == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(two.upper == doctest::Approx(2.0).epsilon(1e-9));

  // Swap-like pair: only the alternating word has big products; the joint
  // spectral radius is 2 and already certified tightly at depth 2.
  MatrixSet swap = make_set("swap", {Matrix::from_rows({{0, 2}, {0, 0}}),
                                     Matrix::from_rows({{0, 0}, {2, 0}})});
  JsrBounds sb = jsr_bounds(swap, 6);
  CHECK(sb.lower == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sb.upper == doctest::Approx(2.0).epsilon(1e-9));

  const double t = 0.9;
  MatrixSet rot = make_set(
      "rot", {Matrix::from_rows({{std::cos(t), -std::sin(t)},
                                 {std::sin(t), std::cos(t)}})});
  JsrBounds rb = jsr_bounds(rot, 8);
  CHECK(rb.lower == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rb.upper == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("extremal norm estimates are monotone in the truncation") {
  MatrixSet s = make_set("pair", {Matrix::from_rows({{0.9, 0.5}, {0, 0.8}}),
                                  Matrix::from_rows({{0.7, 0}, {0.6, 0.9}})});
  std::vector<std::vector<double>> probes = {{1, 0}, {0, 1}, {0.6, 0.8}};
  std::vector<double> e3 = extremal_norm_estimate(s, 3, probes);
  std::vector<double> e6 = extremal_norm_estimate(s, 6, probes);
  REQUIRE(e3.size() == probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CHECK(e3[i] >= 1.0 - 1e-12);  // the empty product contributes ||v||
    CHECK(e6[i] >= e3[i] - 1e-12);
  }
}

TEST_CASE("irreducibility margin separates reducible from irreducible") {
  CHECK(irreducibility_margin(make_set("id", {Matrix::identity(2)}), 512, 8) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // A common kernel direction e2 forces the margin to zero.
  MatrixSet red = make_set("red", {Matrix::from_rows({{1, 0}, {0, 0}}),
                                   Matrix::from_rows({{0.5, 0}, {0, 0}})});
  CHECK(irreducibility_margin(red, 512, 16) < 0.05);
  const double t = 2.0;
  MatrixSet rot = make_set(
      "rot", {Matrix::from_rows({{std::cos(t), -std::sin(t)},
                                 {std::sin(t), std::cos(t)}})});
  CHECK(irreducibility_margin(rot, 512, 8) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sandwich check flags corrupted lifts") {
  MirsResult a = synthetic(1.0, 1.0, 24);  // a_n = n
  // A faithful "lift": b_n = running max of {1, a_1..a_n} = n.
  MirsResult b = synthetic(1.0, 1.0, 24);
  SandwichViolation ok = sandwich_check(a, b, 1);
  CHECK(ok.lower <= 1e-12);
  CHECK(ok.upper <= 1e-12);

  // Corrupt one entry below the lower envelope: n = 24, m = 1 means the
  // lower bound is max(1, a_1..a_12) = 12.
  MirsResult bad = synthetic(1.0, 1.0, 24);
  bad.values[23] = 5.0;
  SandwichViolation v = sandwich_check(a, bad, 1);
  CHECK(v.lower > 6.9);  // 12 - 5

  // Horizon and certification preconditions.
  MirsResult shorter = synthetic(1.0, 1.0, 10);
  CHECK_THROWS_AS(sandwich_check(shorter, b, 1), HorizonMismatch);
  MirsResult uncert = synthetic(1.0, 1.0, 24);
  uncert.certificates[20] = Certificate{Cert::LowerBound, 0, 0};
  CHECK_THROWS_AS(sandwich_check(a, uncert, 1), InsufficientExactPrefix);
}

TEST_CASE("envelope constant extends past the computed horizon") {
  // Constant sequence of ones: the submultiplicative envelope stays 1.
  MirsResult ones = synthetic(1.0, 0.0, 6);
  CHECK(envelope_constant(ones, 40, 0.0, 1) == doctest::Approx(1.0));
  // With exponent 1 the envelope constant is max u_n / n = 1 at n = 1.
  CHECK(envelope_constant(ones, 40, 1.0, 1) == doctest::Approx(1.0));
}

TEST_CASE("collapse peak values reproduce the enumeration engine") {
  const double theta = dio::CFTheta(1.0, 60).theta();
  std::vector<double> a = pj_peak_values(theta, 120);
  REQUIRE(a.size() == 120);

  // The engine enumerates every length-n product on this prefix, so it is an
  // independent oracle for the collapse evaluation.
  MirsResult eng = compute_mirs(pj_matrices(1.0 / 3.0, theta), 16);
  REQUIRE(eng.exact_prefix() == 16);
  for (int n = 1; n <= 16; ++n)
    CHECK(a[n - 1] ==
          doctest::Approx(eng.at(n)).epsilon(1e-9).scale(eng.at(n)));

  // The n^(1/3)-normalized sequence stays inside a fixed band well past the
  // enumerable range (values frozen from a validated run).
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n = 20; n <= 120; ++n) {
    const double v = a[n - 1] / std::cbrt(static_cast<double>(n));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 1.05);
  CHECK(hi <= 1.35);

  // The band maximum is attained inside the engine-checkable prefix, so the
  // whole-range constant is itself engine-certified.
  double early = 0.0;
  for (int n = 20; n <= 24; ++n)
    early = std::max(early, a[n - 1] / std::cbrt(static_cast<double>(n)));
  CHECK(hi == doctest::Approx(early).epsilon(1e-12));

  CHECK_THROWS_AS(pj_peak_values(theta, 0), DegenerateInput);
}

}  // TEST_SUITE
