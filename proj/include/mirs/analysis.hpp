#pragma once

#include <utility>
#include <vector>

#include "mirs/constructions.hpp"
#include "mirs/engine.hpp"

namespace mirs {

// Least-squares growth exponent of a computed sequence on a log-log window.
struct GrowthFit {
  double exponent = 0.0;
  double log_intercept = 0.0;
  int window_lo = 0, window_hi = 0;
  double max_abs_residual = 0.0;   // worst |log a_n - fit| over the window
  double envelope_constant = 0.0;  // max over the window of a_n / n^exponent
};

// Fits log a_n against log n over [window_lo, window_hi], geometrically
// subsampled to at most 64 points.  Window 0 selects the default [N/4, N].
// Only certified entries (Exact or Interval) may appear in the window; throws
// WindowTooSmall when fewer than 8 usable points remain.
GrowthFit fit_exponent(const MirsResult& seq, int window_lo = 0,
                       int window_hi = 0);

// Step-ratio and regular-variation diagnostics over the Exact prefix.
struct RegularityReport {
  double min_step_ratio = 0.0;  // min of a_{n+1} / a_n
  double max_step_ratio = 0.0;
  std::vector<std::pair<int, double>> rv_table;  // multiplier m -> max a_{nm}/a_n
  double weakly_increasing_kappa = 0.0;  // min over n <= n' of a_{n'} / a_n
  int exact_prefix = 0;
};

// Throws InsufficientExactPrefix when fewer than 4 Exact entries exist.
RegularityReport regularity_report(const MirsResult& seq,
                                   const std::vector<int>& multipliers = {2, 3});

// The coupling sequence of a block-triangular family: alpha_n is the largest
// top-right block norm over all length-n products; ahat_n is the largest value
// of the triangular product norm max{||B||, ||Z|| + ||C||} (the operator norm
// bound induced by measuring vectors as ||u|| + ||v|| across the split).
struct CouplingResult {
  std::vector<double> alpha;  // alpha_1..alpha_N
  std::vector<double> ahat;   // same horizon
  // max over n+m <= N of (alpha_{n+m} - alpha_n - alpha_m)/(1+alpha_n+alpha_m)
  double subadd_max_violation = 0.0;
  double sandwich_lo_violation = 0.0;  // max of max{1, alpha_n} - ahat_n
  double sandwich_hi_violation = 0.0;  // max of ahat_n - (1 + alpha_n)
  double sup_upper_norm = 0.0;  // largest diagonal-block product norm seen
  double sup_lower_norm = 0.0;
  int exact_prefix = 0;
};

// Requires every member's diagonal blocks to be contractive (norm <= 1+1e-12),
// which is what makes alpha_n subadditive; throws PreconditionNormExceeded
// otherwise.  The recursion is the engine frontier of the combined set, with
// blocks read back off each product.
CouplingResult coupling_sequence(const BlockCombineSpec& spec, int horizon,
                                 const EngineConfig& config = {});

// Two-sided bracket of the joint spectral radius from one frontier run:
// lower = max rho(P)^(1/n) over enumerated products, upper = min a_n^(1/n)
// over Exact levels.
struct JsrBounds {
  double lower = 0.0;
  double upper = 0.0;
  int depth = 0;
  int exact_levels = 0;  // how many levels contributed to the upper bound
};

// spectral_cap limits how many states per level feed the spectral lower bound
// (a subset maximum is still a valid lower bound).
JsrBounds jsr_bounds(const MatrixSet& set, int depth,
                     const EngineConfig& config = {},
                     std::size_t spectral_cap = 20000);

// Truncated extremal-norm estimate: for each probe v, the largest ||P v|| over
// all products P of length 0..truncation.  Nondecreasing in the truncation.
std::vector<double> extremal_norm_estimate(const MatrixSet& set, int truncation,
                                           const std::vector<std::vector<double>>& probes,
                                           const EngineConfig& config = {});

// Sampled upper bound on the irreducibility margin
// min_{|v|=1} max_i ||A_i v||, via a deterministic low-discrepancy sphere scan
// refined by coordinate descent.  An upper bound only: the true margin cannot
// exceed the returned value.
double irreducibility_margin(const MatrixSet& set, int samples = 4096,
                             int refine_steps = 32);

// Violations of the permutation-lift sandwich
//   max_{0<=k<=floor(n/(m+1))} a_k  <=  b_n  <=  max_{0<=k<=n} a_k
// with a_0 = 1, where a is the source sequence and b the lifted one and m is
// the source cardinality.  Positive entries mean the inequality failed.
struct SandwichViolation {
  double lower = 0.0;
  double upper = 0.0;
  int horizon = 0;
};

// Requires source horizon >= lifted horizon (HorizonMismatch) and Exact
// certificates over the compared range (InsufficientExactPrefix).
SandwichViolation sandwich_check(const MirsResult& source,
                                 const MirsResult& lifted, int m);

// max over from <= n <= N of u_n / n^exponent where u is the certified
// subadditive envelope of the sequence (see mirs_upper_bound).
double envelope_constant(const MirsResult& seq, int N, double exponent,
                         int from = 1);

// Exact peak norms a_1..a_N for the projector-rotation pair at the given
// angle, far past any exhaustively enumerable horizon.  A0 is idempotent, so
// every product collapses to A1^i * G * A1^j where the interior
// G = [[1,S,0],[0,C,0],[0,0,0]] evolves affinely in (S, C) as interior blocks
// are appended.  The operator norm of A1^i * G(S,C) * A1^j is convex in
// (S, C), hence each level maximum is attained at a vertex of the convex hull
// of the reachable interior states, and those hulls obey a small dynamic
// program over the length budget.  Agrees with the engine wherever the
// engine's enumeration is exhaustive.
std::vector<double> pj_peak_values(double theta, int horizon);

}  // namespace mirs
