#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mirs/errors.hpp"

namespace mirs::dio {

// Continued-fraction angle with partial quotients a_i = ceil(q_{i-1}^(gamma-1)),
// q_0 = 1.  gamma = 1 gives the golden-ratio tail (all quotients 1); larger
// gamma gives rapidly growing denominators and a correspondingly
// well-approximable angle.  The angle itself is theta = pi * vartheta where
// vartheta is the value of the continued fraction.
class CFTheta {
 public:
  CFTheta(double gamma, int depth);

  double gamma() const { return gamma_; }
  int depth() const { return depth_; }

  // Partial quotient a_i, valid for 1 <= i <= depth().
  const mpz_class& quotient(int i) const;
  // Convergent denominator q_i / numerator p_i, valid for 0 <= i <= depth().
  const mpz_class& denominator(int i) const;
  const mpz_class& numerator(int i) const;

  // Double-precision value of the continued fraction (in (0,1)) and of the
  // angle pi * vartheta.  Accurate to the quality of the deepest convergent.
  double vartheta() const { return vartheta_; }
  double theta() const { return theta_; }

  // Number of decimal digits of vartheta certified by the deepest convergent.
  int certified_digits() const;
  // Decimal expansion "0.d1d2..." with `digits` fractional digits.  Throws
  // PrecisionExhausted if the stored depth cannot certify that many digits.
  std::string vartheta_digits(int digits) const;

  // Distance from n * vartheta to the nearest integer, via exact modular
  // reduction against the deepest convergent.  Throws DepthTooShallow when n
  // is too large relative to the deepest denominator for the reduction to be
  // trustworthy.
  double dist_to_int(const mpz_class& n) const;
  // |sin(n * theta)| = sin(pi * dist_to_int(n)).
  double abs_sin(const mpz_class& n) const;
  // (n * theta) mod 2*pi, in [0, 2*pi).
  double angle(const mpz_class& n) const;

 private:
  void check_reducible(const mpz_class& n) const;

  double gamma_ = 1.0;
  int depth_ = 0;
  std::vector<mpz_class> a_, p_, q_;
  double vartheta_ = 0.0, theta_ = 0.0;
};

// Scan of the irrationality quality n^power * |sin(n * theta)|.
struct BadnessReport {
  double power = 1.0;         // exponent applied to n (the gamma of the angle)
  long horizon = 0;           // scan range 1 <= n <= horizon
  double inf_value = 0.0;     // smallest n^power * |sin(n * theta)| seen
  long argmin = 0;            // n attaining it
  double sup_convergent = 0;  // largest q_i^power * |sin(q_i * theta)| seen
  bool convergent_pi_bound = false;  // sup_convergent <= pi
};

// Scans n = 1..horizon exactly (via modular reduction) and the stored
// convergent denominators up to convergent_cap.  A positive inf together with
// a finite sup over the denominators exhibits the two-sided approximation
// quality the angle was built for.
BadnessReport badness_scan(const CFTheta& cf, long horizon,
                           long convergent_cap = 1000000);

// One entry of the witness-band scan for the projector-rotation pair at this
// angle: the product (A0 A1^(2q) A0)^reps with reps = ceil(q^(2*gamma)) has a
// closed-form norm; `scaled` divides it by length^alpha with
// alpha = gamma / (2*gamma + 1).
struct WitnessPoint {
  mpz_class q;       // convergent denominator used for the rotation count
  mpz_class reps;    // outer repetitions
  mpz_class length;  // total word length reps * (2q + 2)
  double norm = 0;   // closed-form norm of the product
  double scaled = 0; // norm / length^alpha
};

struct WitnessBand {
  double K = 0;      // sup of q^gamma |sin(q theta)| over scanned denominators
  double alpha = 0;  // gamma / (2*gamma + 1)
  std::vector<WitnessPoint> points;
  double lo = 0, hi = 0;  // extremes of the scaled column
  double ratio() const { return lo > 0 ? hi / lo : 0.0; }
};

// Closed-form norm of (A0 A1^run A0)^reps for the projector-rotation pair at
// the angle of `cf`, with exact angle reduction; cos(run*theta)^reps is taken
// in the log domain so huge repetition counts do not underflow.  Throws
// DegenerateAngle if 1 - cos(run * theta) is numerically zero.
double pj_witness_norm(const CFTheta& cf, const mpz_class& run,
                       const mpz_class& reps);

// Evaluates the first `count` eligible denominators (those with
// 2 K^2 q^(-2 gamma) < 1), using run = 2q.  Throws NoEligibleDenominators if
// the stored depth does not contain that many.
WitnessBand pj_witness_band(const CFTheta& cf, int count,
                            long convergent_cap = 1000000);

// The witness as an explicit word over member indices {0, 1}: reps copies of
// 0 1^run 0.  Intended for small cross-checks against a frontier engine.
std::vector<int> pj_witness_word(long run, long reps);

// The eligible (q, reps, length) subsequence alone, i.e. the rows of
// pj_witness_band.
inline std::vector<WitnessPoint> pj_subsequence(const CFTheta& cf, int count,
                                                long convergent_cap = 1000000) {
  return pj_witness_band(cf, count, convergent_cap).points;
}

// Grid verification of the trigonometric bending inequality
//   |sin phi| + p |cos phi| <= (p^(2+beta) + C / |sin phi|^beta)^(1/(2+beta))
// with C = 2^beta * K and K = sup_{p >= delta} p^(-beta) ((p + 2/p)^(2+beta)
// - p^(2+beta)).
struct BendReport {
  double beta = 0, delta = 0;
  double K = 0, C = 0;
  // Largest relative margin of lhs^(2+beta) - (p^(2+beta) + C/|sin phi|^beta)
  // over the grid; the inequality holds iff this is <= 0.
  double max_margin = 0;
  double p_at = 0, phi_at = 0;  // grid point attaining the margin
  bool holds = false;
};

// p runs over a log-spaced grid of p_points values in [delta, p_max]; phi over
// phi_points interior points of (0, pi).
BendReport bend_check(double beta, double delta, int p_points, int phi_points,
                      double p_max = 1e6);

// The constant K above, computed by a dense scan of p.  (For the exponents
// exercised in the tests the supremum is attained at p = delta.)
double bend_constant(double beta, double delta, int p_points = 100000,
                     double p_max = 1e8);

}  // namespace mirs::dio
