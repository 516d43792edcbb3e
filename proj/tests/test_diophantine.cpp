#include <cmath>
#include <numbers>
#include <string>

#include <doctest.h>

#include "mirs/diophantine.hpp"
#include "mirs/engine.hpp"
#include "mirs/constructions.hpp"
#include "mirs/errors.hpp"

using namespace mirs;
using mirs::dio::CFTheta;

TEST_SUITE("diophantine") {

TEST_CASE("exponent 1 gives the golden continued fraction") {
  CFTheta cf(1.0, 40);
  for (int i = 1; i <= 40; ++i) CHECK(cf.quotient(i) == 1);
  // Fibonacci denominators.
  CHECK(cf.denominator(0) == 1);
  CHECK(cf.denominator(1) == 1);
  CHECK(cf.denominator(2) == 2);
  CHECK(cf.denominator(7) == 21);
  CHECK(cf.denominator(10) == 89);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(cf.vartheta() == doctest::Approx(golden).epsilon(1e-14));
  CHECK(cf.theta() ==
        doctest::Approx(std::numbers::pi * golden).epsilon(1e-14));
}

TEST_CASE("exponent 2 quotients square the denominators") {
  CFTheta cf(2.0, 6);
  // a_i = previous denominator (since ceil(q^(2-1)) = q).
  CHECK(cf.quotient(1) == 1);
  CHECK(cf.quotient(2) == 1);
  CHECK(cf.quotient(3) == 2);
  CHECK(cf.quotient(4) == 5);
  CHECK(cf.quotient(5) == 27);
  CHECK(cf.quotient(6) == 734);
  CHECK(cf.denominator(5) == 734);
  CHECK(cf.denominator(6) == 538783);
}

TEST_CASE("certified digits scale with the final denominator") {
  CFTheta shallow(1.0, 10);
  CFTheta deep(1.0, 40);
  CHECK(deep.certified_digits() > shallow.certified_digits());
  CHECK(shallow.certified_digits() >= 1);

  std::string digits = deep.vartheta_digits(10);
  CHECK(digits.substr(0, 2) == "0.");
  CHECK(digits == "0.6180339887");
  CHECK_THROWS_AS(deep.vartheta_digits(100000), PrecisionExhausted);
}

TEST_CASE("angle reduction agrees with direct evaluation for small n") {
  CFTheta cf(1.0, 40);
  const double theta = cf.theta();
  for (int n : {1, 2, 3, 10, 50, 1000}) {
    CHECK(cf.abs_sin(n) ==
          doctest::Approx(std::fabs(std::sin(n * theta))).epsilon(1e-9));
    const double ang = cf.angle(n);
    CHECK(ang >= 0.0);
    CHECK(ang < 2 * std::numbers::pi);
    CHECK(std::cos(ang) == doctest::Approx(std::cos(n * theta)).epsilon(1e-9));
  }
  // Out-of-depth requests are refused rather than silently wrong.
  CFTheta tiny(1.0, 5);  // final denominator 8
  CHECK_THROWS_AS(tiny.abs_sin(1000), DepthTooShallow);
}

TEST_CASE("badness scan certifies the two-sided approximation quality") {
  CFTheta cf(1.0, 40);
  mirs::dio::BadnessReport rep = mirs::dio::badness_scan(cf, 10000);
  // Design floor: dist(n * vartheta, Z) > 1/(6 n^gamma) turns into
  // n |sin(n theta)| > 1/3 via sin(pi x) >= 2x on [0, 1/2].
  CHECK(rep.inf_value > 1.0 / 3.0);
  // The actual infimum sits at n = 1: sin(pi * (1 - golden)) = 0.932...
  CHECK(rep.argmin == 1);
  CHECK(rep.inf_value == doctest::Approx(0.93203).epsilon(1e-4));
  // Along convergent denominators the scaled sine never exceeds pi.
  CHECK(rep.convergent_pi_bound);
  CHECK(rep.sup_convergent <= std::numbers::pi);
  CHECK(rep.sup_convergent > 1.0);

  CFTheta cf2(2.0, 9);
  mirs::dio::BadnessReport rep2 = mirs::dio::badness_scan(cf2, 2000);
  CHECK(rep2.inf_value > 1.0 / 3.0);
  CHECK(rep2.convergent_pi_bound);
}

TEST_CASE("witness band on the golden angle") {
  CFTheta cf(1.0, 60);
  mirs::dio::WitnessBand band = mirs::dio::pj_witness_band(cf, 10);
  REQUIRE(band.points.size() == 10);
  // K approaches pi / sqrt 5 along Fibonacci denominators.
  CHECK(band.K ==
        doctest::Approx(std::numbers::pi / std::sqrt(5.0)).epsilon(2e-3));
  CHECK(band.alpha == doctest::Approx(1.0 / 3.0));
  // Eligibility 2 K^2 < q^2 first holds at q = 2.
  CHECK(band.points[0].q == 2);
  CHECK(band.points[0].reps == 4);       // ceil(2^2)
  CHECK(band.points[0].length == 24);    // 4 * (2*2 + 2)
  for (const auto& p : band.points) {
    CHECK(p.norm >= 1.0);
    CHECK(p.scaled > 0.0);
  }
  CHECK(band.lo > 0.3);
  CHECK(band.ratio() < 2.0);

  // Asking for more eligible denominators than the depth stores fails.
  CFTheta tiny(1.0, 8);
  CHECK_THROWS_AS(mirs::dio::pj_witness_band(tiny, 10),
                  NoEligibleDenominators);
}

TEST_CASE("closed-form witness norm equals direct multiplication") {
  CFTheta cf(1.0, 60);
  MatrixSet pj = pj_matrices(1.0 / 3.0, cf.theta());
  for (long run : {1L, 2L, 3L, 7L}) {
    for (long reps : {1L, 2L, 5L}) {
      const double closed = mirs::dio::pj_witness_norm(cf, run, reps);
      const double direct =
          evaluate_witness(pj, mirs::dio::pj_witness_word(run, reps));
      CHECK(closed == doctest::Approx(direct).epsilon(1e-11));
    }
  }
  // Huge repetition counts must not underflow: cos^m goes to zero and the
  // norm tends to the norm of [[1, w, 0], [0, 0, 0], [0, 0, 0]].
  const double big = mirs::dio::pj_witness_norm(cf, 2, mpz_class("1000000000000"));
  CHECK(std::isfinite(big));
  CHECK(big >= 1.0);
  // Degenerate parameters are rejected up front.
  CHECK_THROWS_AS(mirs::dio::pj_witness_norm(cf, 0, 1), DegenerateInput);
  CHECK_THROWS_AS(mirs::dio::pj_witness_norm(cf, 2, 0), DegenerateInput);
}

TEST_CASE("bend constant closed forms") {
  // At beta = 1, delta = 1 the supremum sits at p = 1 with value 3^3 - 1.
  CHECK(mirs::dio::bend_constant(1.0, 1.0, 20000) ==
        doctest::Approx(26.0).epsilon(1e-6));
  // For large delta the constant decays to the limit 2 beta + 4.
  CHECK(mirs::dio::bend_constant(1.0, 1000.0, 20000) ==
        doctest::Approx(6.0).epsilon(1e-3));
  CHECK(mirs::dio::bend_constant(0.5, 1000.0, 20000) ==
        doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("bend inequality holds on a dense grid") {
  mirs::dio::BendReport rep = mirs::dio::bend_check(1.0, 1.0, 300, 2000);
  CHECK(rep.holds);
  CHECK(rep.max_margin <= 0.0);
  CHECK(rep.K == doctest::Approx(26.0).epsilon(1e-6));
  CHECK(rep.C == doctest::Approx(52.0).epsilon(1e-6));

  mirs::dio::BendReport rep2 = mirs::dio::bend_check(0.5, 1.0, 300, 2000);
  CHECK(rep2.holds);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(CFTheta(0.5, 10), DegenerateInput);
  CHECK_THROWS_AS(CFTheta(1.0, 0), DegenerateInput);
}

}  // TEST_SUITE
