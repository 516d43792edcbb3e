#include "mirs/diophantine.hpp"

#include <cstdio>

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mirs/linalg.hpp"
#include "mirs/matrix.hpp"

namespace mirs::dio {

namespace {

// num/den as a double, safe for operands far beyond double range.
double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  mpf_class n(num, 128), d(den, 128);
  return mpf_class(n / d).get_d();
}

// ceil(base^expo) for base >= 1, expo >= 0.
mpz_class ceil_power(const mpz_class& base, double expo) {
  if (expo <= 0.0) return 1;
  double whole = 0.0;
  if (std::modf(expo, &whole) == 0.0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(whole));
    return r;
  }
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(
      mpz_sizeinbase(base.get_mpz_t(), 2) * (std::ceil(expo) + 1) + 64);
  mpfr_t x, e;
  mpfr_init2(x, prec);
  mpfr_init2(e, 64);
  mpfr_set_z(x, base.get_mpz_t(), MPFR_RNDN);
  mpfr_set_d(e, expo, MPFR_RNDN);
  mpfr_pow(x, x, e, MPFR_RNDN);
  mpfr_ceil(x, x);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), x, MPFR_RNDN);
  mpfr_clear(x);
  mpfr_clear(e);
  return r;
}

double log_of_mpz(const mpz_class& n) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  const double r = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return r;
}

}  // namespace

CFTheta::CFTheta(double gamma, int depth) {
  if (!std::isfinite(gamma) || gamma < 1.0)
    throw DegenerateInput("continued fraction exponent must satisfy gamma >= 1");
  if (depth < 1) throw DegenerateInput("continued fraction depth must be positive");
  gamma_ = gamma;
  depth_ = depth;
  a_.assign(depth + 1, 0);
  p_.assign(depth + 1, 0);
  q_.assign(depth + 1, 0);
  p_[0] = 0;
  q_[0] = 1;
  // Seed values for index -1 of the standard convergent recurrences.
  const mpz_class p_minus1 = 1, q_minus1 = 0;
  for (int i = 1; i <= depth; ++i) {
    a_[i] = ceil_power(q_[i - 1], gamma - 1.0);
    const mpz_class& pp = (i == 1) ? p_minus1 : p_[i - 2];
    const mpz_class& qq = (i == 1) ? q_minus1 : q_[i - 2];
    p_[i] = a_[i] * p_[i - 1] + pp;
    q_[i] = a_[i] * q_[i - 1] + qq;
  }
  vartheta_ = ratio_to_double(p_[depth], q_[depth]);
  theta_ = std::numbers::pi * vartheta_;
}

const mpz_class& CFTheta::quotient(int i) const {
  if (i < 1 || i > depth_) throw IndexOutOfRange("partial quotient index");
  return a_[i];
}

const mpz_class& CFTheta::denominator(int i) const {
  if (i < 0 || i > depth_) throw IndexOutOfRange("convergent index");
  return q_[i];
}

const mpz_class& CFTheta::numerator(int i) const {
  if (i < 0 || i > depth_) throw IndexOutOfRange("convergent index");
  return p_[i];
}

int CFTheta::certified_digits() const {
  // |vartheta - p_L/q_L| < 1/q_L^2, so roughly 2 log10(q_L) digits agree.
  const mpz_class bound = q_[depth_] * q_[depth_];
  const int digits = static_cast<int>(mpz_sizeinbase(bound.get_mpz_t(), 10)) - 2;
  return std::max(0, digits);
}

std::string CFTheta::vartheta_digits(int digits) const {
  if (digits < 1) throw DegenerateInput("digit count must be positive");
  const int have = certified_digits();
  if (digits > have) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "%d digits requested but depth %d only certifies %d; "
                  "increase the continued fraction depth",
                  digits, depth_, have);
    throw PrecisionExhausted(msg);
  }
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 64;
  mpfr_t num, den;
  mpfr_init2(num, prec);
  mpfr_init2(den, prec);
  mpfr_set_z(num, p_[depth_].get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den, q_[depth_].get_mpz_t(), MPFR_RNDN);
  mpfr_div(num, num, den, MPFR_RNDN);
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Rf", digits, num);
  std::string result(out);
  mpfr_free_str(out);
  mpfr_clear(num);
  mpfr_clear(den);
  return result;
}

void CFTheta::check_reducible(const mpz_class& n) const {
  // The reduction against p_L/q_L misrepresents n * vartheta by at most
  // n / (q_L * q_{L+1}); keep n well below q_L so that error is negligible.
  mpz_class m = 4 * abs(n);
  if (m >= q_[depth_])
    throw DepthTooShallow(
        "multiplier too large for the stored continued fraction depth");
}

double CFTheta::dist_to_int(const mpz_class& n) const {
  check_reducible(n);
  mpz_class r = (n * p_[depth_]) % q_[depth_];
  if (r < 0) r += q_[depth_];
  const mpz_class other = q_[depth_] - r;
  return ratio_to_double(std::min(r, other), q_[depth_]);
}

double CFTheta::abs_sin(const mpz_class& n) const {
  return std::sin(std::numbers::pi * dist_to_int(n));
}

double CFTheta::angle(const mpz_class& n) const {
  check_reducible(n);
  const mpz_class two_q = 2 * q_[depth_];
  mpz_class r = (n * p_[depth_]) % two_q;
  if (r < 0) r += two_q;
  return std::numbers::pi * ratio_to_double(r, q_[depth_]);
}

BadnessReport badness_scan(const CFTheta& cf, long horizon, long convergent_cap) {
  if (horizon < 1) throw DegenerateInput("scan horizon must be positive");
  const mpz_class& qL = cf.denominator(cf.depth());
  const mpz_class& pL = cf.numerator(cf.depth());
  {
    mpz_class guard = 4 * mpz_class(horizon);
    if (guard >= qL)
      throw DepthTooShallow("scan horizon too large for the stored depth");
  }

  BadnessReport rep;
  rep.power = cf.gamma();
  rep.horizon = horizon;
  rep.inf_value = std::numeric_limits<double>::infinity();

  mpz_class r = 0;
  for (long n = 1; n <= horizon; ++n) {
    r += pL;
    if (r >= qL) r -= qL;
    // dist(n * vartheta, Z) via the numerically smaller residue.
    const mpz_class other = qL - r;
    const double dist =
        (r <= other ? ratio_to_double(r, qL)
                    : ratio_to_double(other, qL));
    const double value =
        std::pow(static_cast<double>(n), rep.power) *
        std::sin(std::numbers::pi * dist);
    if (value < rep.inf_value) {
      rep.inf_value = value;
      rep.argmin = n;
    }
  }

  rep.sup_convergent = 0.0;
  for (int i = 1; i <= cf.depth(); ++i) {
    const mpz_class& qi = cf.denominator(i);
    if (qi > convergent_cap) break;
    mpz_class guard = 4 * qi;
    if (guard >= qL) break;
    const double qd = ratio_to_double(qi, 1);
    const double value = std::pow(qd, rep.power) * cf.abs_sin(qi);
    rep.sup_convergent = std::max(rep.sup_convergent, value);
  }
  rep.convergent_pi_bound = rep.sup_convergent <= std::numbers::pi;
  return rep;
}

double pj_witness_norm(const CFTheta& cf, const mpz_class& run,
                       const mpz_class& reps) {
  if (run < 1 || reps < 1)
    throw DegenerateInput("witness parameters must be positive");
  // Half-angle evaluation keeps 1 - cos(run*theta) accurate when the reduced
  // angle sits near a multiple of 2*pi.
  const double half = 0.5 * cf.angle(run);  // in [0, pi)
  const double sh = std::sin(half), ch = std::cos(half);
  const double one_minus_c = 2.0 * sh * sh;  // 1 - cos(run theta)
  if (one_minus_c < 1e-300)
    throw DegenerateAngle("cos(run * theta) is numerically 1");
  const double c = 1.0 - one_minus_c;  // cos(run theta)
  const double s = 2.0 * sh * ch;      // sin(run theta)
  const double m = ratio_to_double(reps, 1);

  double cm;  // cos(run theta)^reps
  if (c == 0.0) {
    cm = 0.0;
  } else {
    const double lg = c > 0.0 ? m * std::log1p(-one_minus_c)
                              : m * std::log(-c);
    const double mag = lg < -745.0 ? 0.0 : std::exp(lg);
    const bool negative = c < 0.0 && mpz_odd_p(reps.get_mpz_t());
    cm = negative ? -mag : mag;
  }

  const double w = s * (1.0 - cm) / one_minus_c;
  Matrix top(3, 3);
  top.at(0, 0) = 1.0;
  top.at(0, 1) = w;
  top.at(1, 1) = cm;
  return op_norm(top);
}

WitnessBand pj_witness_band(const CFTheta& cf, int count, long convergent_cap) {
  if (count < 1) throw DegenerateInput("witness band needs a positive count");
  const double gamma = cf.gamma();
  WitnessBand band;
  band.alpha = gamma / (2.0 * gamma + 1.0);

  const mpz_class& qL = cf.denominator(cf.depth());
  band.K = 0.0;
  for (int i = 1; i <= cf.depth(); ++i) {
    const mpz_class& qi = cf.denominator(i);
    if (qi > convergent_cap) break;
    if (8 * qi >= qL) break;
    const double qd = ratio_to_double(qi, 1);
    band.K = std::max(band.K, std::pow(qd, gamma) * cf.abs_sin(qi));
  }
  if (band.K <= 0.0)
    throw NoEligibleDenominators("no convergents available below the cap");

  for (int i = 1; i <= cf.depth() && static_cast<int>(band.points.size()) < count;
       ++i) {
    const mpz_class& qi = cf.denominator(i);
    if (qi > convergent_cap || 8 * qi >= qL) break;
    if (!band.points.empty() && qi == band.points.back().q) continue;
    const double qd = ratio_to_double(qi, 1);
    // Eligibility: 2 K^2 q^(-2 gamma) < 1.
    if (2.0 * band.K * band.K >= std::pow(qd, 2.0 * gamma)) continue;
    WitnessPoint pt;
    pt.q = qi;
    pt.reps = ceil_power(qi, 2.0 * gamma);
    pt.length = pt.reps * (2 * qi + 2);
    pt.norm = pj_witness_norm(cf, 2 * qi, pt.reps);
    pt.scaled = pt.norm * std::exp(-band.alpha * log_of_mpz(pt.length));
    band.points.push_back(std::move(pt));
  }
  if (static_cast<int>(band.points.size()) < count)
    throw NoEligibleDenominators(
        "stored continued fraction depth has too few eligible denominators");

  band.lo = std::numeric_limits<double>::infinity();
  band.hi = 0.0;
  for (const auto& pt : band.points) {
    band.lo = std::min(band.lo, pt.scaled);
    band.hi = std::max(band.hi, pt.scaled);
  }
  return band;
}

std::vector<int> pj_witness_word(long run, long reps) {
  if (run < 1 || reps < 1)
    throw DegenerateInput("witness parameters must be positive");
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(reps) * (run + 2));
  for (long r = 0; r < reps; ++r) {
    word.push_back(0);
    for (long k = 0; k < run; ++k) word.push_back(1);
    word.push_back(0);
  }
  return word;
}

namespace {

double bend_sup_term(double beta, double p) {
  // p^-beta ((p + 2/p)^(2+beta) - p^(2+beta)) rewritten as
  // p^2 expm1((2+beta) log1p(2/p^2)): the direct difference of the two
  // powers loses all significant digits once p^(2+beta) dwarfs the gap.
  return p * p * std::expm1((2.0 + beta) * std::log1p(2.0 / (p * p)));
}

}  // namespace

double bend_constant(double beta, double delta, int p_points, double p_max) {
  if (!(beta > 0.0)) throw DegenerateInput("bend exponent must be positive");
  if (!(delta > 0.0)) throw DegenerateInput("bend threshold must be positive");
  if (p_points < 2) throw DegenerateInput("bend scan needs at least two points");
  const double lo = std::log(delta), hi = std::log(p_max);
  double K = 0.0;
  for (int i = 0; i < p_points; ++i) {
    const double p = std::exp(lo + (hi - lo) * i / (p_points - 1));
    K = std::max(K, bend_sup_term(beta, p));
  }
  // The scanned expression decreases towards the limit 2*beta + 4, so the tail
  // beyond p_max cannot raise the supremum for the parameters accepted here.
  return std::max(K, 2.0 * beta + 4.0);
}

BendReport bend_check(double beta, double delta, int p_points, int phi_points,
                      double p_max) {
  if (phi_points < 1) throw DegenerateInput("bend grid needs phi points");
  BendReport rep;
  rep.beta = beta;
  rep.delta = delta;
  rep.K = bend_constant(beta, delta);
  rep.C = std::pow(2.0, beta) * rep.K;

  const double lo = std::log(delta), hi = std::log(p_max);
  rep.max_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < p_points; ++i) {
    const double p = std::exp(lo + (hi - lo) * i / (p_points - 1));
    const double pp = std::pow(p, 2.0 + beta);
    for (int j = 1; j <= phi_points; ++j) {
      const double phi = std::numbers::pi * j / (phi_points + 1);
      const double s = std::abs(std::sin(phi));
      const double lhs = s + p * std::abs(std::cos(phi));
      const double rhs_inner = pp + rep.C / std::pow(s, beta);
      const double margin =
          (std::pow(lhs, 2.0 + beta) - rhs_inner) / rhs_inner;
      if (margin > rep.max_margin) {
        rep.max_margin = margin;
        rep.p_at = p;
        rep.phi_at = phi;
      }
    }
  }
  rep.holds = rep.max_margin <= 0.0;
  return rep;
}

}  // namespace mirs::dio
