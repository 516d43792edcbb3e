#include "mirs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mirs/linalg.hpp"

namespace mirs {

namespace {

bool certified(const Certificate& c) { return c.kind != Cert::LowerBound; }

Matrix block_of(const double* data, int dim, int r0, int c0, int rows,
                int cols) {
  Matrix b(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      b.at(r, c) = data[(r0 + r) * dim + (c0 + c)];
  return b;
}

}  // namespace

GrowthFit fit_exponent(const MirsResult& seq, int window_lo, int window_hi) {
  const int N = seq.horizon;
  if (N < 2) throw WindowTooSmall("sequence too short to fit");
  if (window_lo <= 0) window_lo = std::max(1, N / 4);
  if (window_hi <= 0) window_hi = N;
  if (window_lo < 1 || window_hi > N || window_lo >= window_hi)
    throw WindowTooSmall("fit window empty or outside the computed horizon");
  for (int n = window_lo; n <= window_hi; ++n) {
    if (!certified(seq.cert(n)))
      throw WindowTooSmall(
          "fit window contains entries that are only lower bounds");
    if (!(seq.at(n) > 0.0))
      throw DegenerateInput("cannot fit a growth exponent through zero values");
  }

  // Geometric subsample of at most 64 window points.
  std::vector<int> ns;
  const double span = static_cast<double>(window_hi) / window_lo;
  for (int k = 0; k < 64; ++k) {
    const int n = std::min(
        window_hi, static_cast<int>(std::lround(
                       window_lo * std::pow(span, k / 63.0))));
    if (ns.empty() || n > ns.back()) ns.push_back(n);
  }
  if (ns.size() < 8) throw WindowTooSmall("fewer than 8 usable fit points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n : ns) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(seq.at(n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(ns.size());
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) throw WindowTooSmall("fit window has no spread");

  GrowthFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.exponent = (m * sxy - sx * sy) / denom;
  fit.log_intercept = (sy - fit.exponent * sx) / m;
  for (int n : ns) {
    const double pred =
        fit.log_intercept + fit.exponent * std::log(static_cast<double>(n));
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs(std::log(seq.at(n)) - pred));
  }
  for (int n = window_lo; n <= window_hi; ++n)
    fit.envelope_constant =
        std::max(fit.envelope_constant,
                 seq.at(n) / std::pow(static_cast<double>(n), fit.exponent));
  return fit;
}

RegularityReport regularity_report(const MirsResult& seq,
                                   const std::vector<int>& multipliers) {
  const int prefix = seq.exact_prefix();
  if (prefix < 4)
    throw InsufficientExactPrefix(
        "regularity diagnostics need at least 4 exact entries");
  for (int n = 1; n <= prefix; ++n)
    if (!(seq.at(n) > 0.0))
      throw DegenerateInput("step ratios undefined through zero values");

  RegularityReport rep;
  rep.exact_prefix = prefix;
  rep.min_step_ratio = std::numeric_limits<double>::infinity();
  rep.max_step_ratio = 0.0;
  for (int n = 1; n < prefix; ++n) {
    const double r = seq.at(n + 1) / seq.at(n);
    rep.min_step_ratio = std::min(rep.min_step_ratio, r);
    rep.max_step_ratio = std::max(rep.max_step_ratio, r);
  }
  for (int mult : multipliers) {
    if (mult < 2) throw DegenerateInput("multipliers must be at least 2");
    double worst = 0.0;
    for (int n = 1; n * mult <= prefix; ++n)
      worst = std::max(worst, seq.at(n * mult) / seq.at(n));
    rep.rv_table.emplace_back(mult, worst);
  }
  double running_max = 0.0;
  rep.weakly_increasing_kappa = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= prefix; ++n) {
    running_max = std::max(running_max, seq.at(n));
    rep.weakly_increasing_kappa =
        std::min(rep.weakly_increasing_kappa, seq.at(n) / running_max);
  }
  return rep;
}

CouplingResult coupling_sequence(const BlockCombineSpec& spec, int horizon,
                                 const EngineConfig& config) {
  spec.validate();
  for (std::size_t i = 0; i < spec.upper.size(); ++i) {
    if (op_norm(spec.upper.members[i]) > 1.0 + 1e-12 ||
        op_norm(spec.lower.members[i]) > 1.0 + 1e-12)
      throw PreconditionNormExceeded(
          "coupling sequence needs contractive diagonal blocks");
  }
  const int k = spec.upper.dim;
  const int d2 = spec.lower.dim;
  const MatrixSet combined = block_combine(spec);
  const int dim = combined.dim;

  CouplingResult res;
  const auto observer = [&](const Frontier& f) {
    double amax = 0, hmax = 0, bmax = 0, cmax = 0;
    for (std::size_t i = 0; i < f.count(); ++i) {
      const double* data = f.state_data(i);
      const double nb = op_norm(block_of(data, dim, 0, 0, k, k));
      const double nz = op_norm(block_of(data, dim, 0, k, k, d2));
      const double nc = op_norm(block_of(data, dim, k, k, d2, d2));
      amax = std::max(amax, nz);
      bmax = std::max(bmax, nb);
      cmax = std::max(cmax, nc);
      hmax = std::max(hmax, std::max(nb, nz + nc));
    }
    res.alpha.push_back(amax);
    res.ahat.push_back(hmax);
    res.sup_upper_norm = std::max(res.sup_upper_norm, bmax);
    res.sup_lower_norm = std::max(res.sup_lower_norm, cmax);
  };
  const MirsResult run = compute_mirs(combined, horizon, config, observer);
  res.exact_prefix = run.exact_prefix();

  const int H = static_cast<int>(res.alpha.size());
  res.subadd_max_violation = -std::numeric_limits<double>::infinity();
  for (int n = 1; n < H; ++n)
    for (int m = 1; n + m <= H; ++m) {
      const double an = res.alpha[n - 1], am = res.alpha[m - 1];
      const double v = (res.alpha[n + m - 1] - an - am) / (1.0 + an + am);
      res.subadd_max_violation = std::max(res.subadd_max_violation, v);
    }
  res.sandwich_lo_violation = -std::numeric_limits<double>::infinity();
  res.sandwich_hi_violation = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= H; ++n) {
    const double a = res.alpha[n - 1], h = res.ahat[n - 1];
    res.sandwich_lo_violation =
        std::max(res.sandwich_lo_violation, std::max(1.0, a) - h);
    res.sandwich_hi_violation =
        std::max(res.sandwich_hi_violation, h - (1.0 + a));
  }
  return res;
}

JsrBounds jsr_bounds(const MatrixSet& set, int depth,
                     const EngineConfig& config, std::size_t spectral_cap) {
  if (depth < 1) throw DegenerateInput("bracket depth must be positive");
  JsrBounds bounds;
  bounds.depth = depth;
  const auto observer = [&](const Frontier& f) {
    // Every frontier state is a genuine product, so its spectral radius feeds
    // a valid lower bound even on levels that later degrade.
    const std::size_t limit = std::min(f.count(), spectral_cap);
    double best = 0.0;
    for (std::size_t i = 0; i < limit; ++i)
      best = std::max(best, spectral_radius(f.state(i)));
    if (best > 0.0)
      bounds.lower =
          std::max(bounds.lower, std::pow(best, 1.0 / f.length()));
  };
  const MirsResult run = compute_mirs(set, depth, config, observer);
  bounds.upper = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= run.horizon; ++n) {
    if (run.cert(n).kind != Cert::Exact) continue;
    bounds.upper = std::min(bounds.upper, std::pow(run.at(n), 1.0 / n));
    ++bounds.exact_levels;
  }
  return bounds;
}

std::vector<double> extremal_norm_estimate(
    const MatrixSet& set, int truncation,
    const std::vector<std::vector<double>>& probes,
    const EngineConfig& config) {
  set.validate();
  if (truncation < 0) throw DegenerateInput("truncation must be nonnegative");
  if (probes.empty()) throw DegenerateInput("no probe vectors supplied");
  for (const auto& v : probes)
    if (static_cast<int>(v.size()) != set.dim)
      throw DimensionMismatch("probe vector length must match the set dimension");

  std::vector<double> best(probes.size(), 0.0);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    double s = 0.0;
    for (double x : probes[p]) s += x * x;
    best[p] = std::sqrt(s);  // the length-0 (identity) term
  }
  const int dim = set.dim;
  const auto observer = [&](const Frontier& f) {
    for (std::size_t i = 0; i < f.count(); ++i) {
      const double* m = f.state_data(i);
      for (std::size_t p = 0; p < probes.size(); ++p) {
        double s = 0.0;
        for (int r = 0; r < dim; ++r) {
          double y = 0.0;
          for (int c = 0; c < dim; ++c) y += m[r * dim + c] * probes[p][c];
          s += y * y;
        }
        best[p] = std::max(best[p], std::sqrt(s));
      }
    }
  };
  if (truncation >= 1) compute_mirs(set, truncation, config, observer);
  return best;
}

double irreducibility_margin(const MatrixSet& set, int samples,
                             int refine_steps) {
  set.validate();
  if (samples < 1) throw DegenerateInput("need at least one sample");
  const int d = set.dim;

  const auto objective = [&](const std::vector<double>& v) {
    double worst = 0.0;
    for (const auto& a : set.members) {
      double s = 0.0;
      for (int r = 0; r < d; ++r) {
        double y = 0.0;
        for (int c = 0; c < d; ++c) y += a.at(r, c) * v[c];
        s += y * y;
      }
      worst = std::max(worst, s);
    }
    return std::sqrt(worst);
  };
  const auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s < 1e-12) return false;
    for (double& x : v) x /= s;
    return true;
  };

  // Square roots of the first primes drive a Weyl sequence; Box-Muller turns
  // consecutive coordinates into a deterministic near-uniform sphere scan.
  std::vector<double> roots;
  for (int cand = 2; static_cast<int>(roots.size()) < 2 * d + 2; ++cand) {
    bool prime = true;
    for (int f = 2; f * f <= cand; ++f)
      if (cand % f == 0) {
        prime = false;
        break;
      }
    if (prime) roots.push_back(std::sqrt(static_cast<double>(cand)));
  }

  std::vector<double> bestv;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> v(d);
  for (int k = 1; k <= samples; ++k) {
    for (int j = 0; j < d; j += 2) {
      double u1 = k * roots[j] - std::floor(k * roots[j]);
      double u2 = k * roots[j + 1] - std::floor(k * roots[j + 1]);
      u1 = std::max(u1, 1e-12);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[j] = r * std::cos(2.0 * std::numbers::pi_v<double> * u2);
      if (j + 1 < d) v[j + 1] = r * std::sin(2.0 * std::numbers::pi_v<double> * u2);
    }
    std::vector<double> u = v;
    if (!normalize(u)) continue;
    const double val = objective(u);
    if (val < best) {
      best = val;
      bestv = u;
    }
  }
  if (bestv.empty()) throw DegenerateInput("sphere sampling produced no points");

  double step = 0.5;
  for (int round = 0; round < refine_steps; ++round) {
    bool improved = false;
    for (int j = 0; j < d; ++j) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> w = bestv;
        w[j] += sgn * step;
        if (!normalize(w)) continue;
        const double val = objective(w);
        if (val < best - 1e-15) {
          best = val;
          bestv = w;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

SandwichViolation sandwich_check(const MirsResult& source,
                                 const MirsResult& lifted, int m) {
  if (m < 1) throw DegenerateInput("source cardinality must be positive");
  if (source.horizon < lifted.horizon)
    throw HorizonMismatch(
        "source sequence must cover the lifted sequence's horizon");
  const int H = lifted.horizon;
  for (int n = 1; n <= H; ++n)
    if (source.cert(n).kind != Cert::Exact ||
        lifted.cert(n).kind != Cert::Exact)
      throw InsufficientExactPrefix(
          "sandwich comparison requires exact entries on both sides");

  // prefix_max[k] = max{a_0..a_k} with the a_0 = 1 convention.
  std::vector<double> prefix_max(H + 1, 1.0);
  for (int k = 1; k <= H; ++k)
    prefix_max[k] = std::max(prefix_max[k - 1], source.at(k));

  SandwichViolation viol;
  viol.horizon = H;
  viol.lower = -std::numeric_limits<double>::infinity();
  viol.upper = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= H; ++n) {
    const double b = lifted.at(n);
    viol.lower = std::max(viol.lower, prefix_max[n / (m + 1)] - b);
    viol.upper = std::max(viol.upper, b - prefix_max[n]);
  }
  return viol;
}

double envelope_constant(const MirsResult& seq, int N, double exponent,
                         int from) {
  if (from < 1 || N < from) throw DegenerateInput("envelope window empty");
  const std::vector<double> u = mirs_upper_bound(seq, N);
  double best = 0.0;
  for (int n = from; n <= N; ++n)
    best = std::max(best,
                    u[n - 1] / std::pow(static_cast<double>(n), exponent));
  return best;
}

namespace {

struct HullPoint {
  double s = 0.0;  // accumulated top-right interior entry S
  double c = 0.0;  // accumulated middle interior entry C
};

// Extreme points of a planar point cloud by the monotone chain, counter
// clockwise.  Collinear interior points are dropped; they cannot carry the
// maximum of a convex objective beyond what the endpoints do.
std::vector<HullPoint> convex_hull(std::vector<HullPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const HullPoint& a, const HullPoint& b) {
    return a.s < b.s || (a.s == b.s && a.c < b.c);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const HullPoint& a, const HullPoint& b) {
                          return a.s == b.s && a.c == b.c;
                        }),
            pts.end());
  const std::size_t m = pts.size();
  if (m <= 2) return pts;
  auto cross = [](const HullPoint& o, const HullPoint& a, const HullPoint& b) {
    return (a.s - o.s) * (b.c - o.c) - (a.c - o.c) * (b.s - o.s);
  };
  std::vector<HullPoint> hull(2 * m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = m - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Gram data of the two active columns of A1^t (for the left factor) and the
// two active rows (for the right factor).
struct SideGram {
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
};

// Largest singular value of  x1*b^T + C*x2*d^T  where b = r1 + S*r2 and the
// Gram matrices of {x1,x2} and {r1,r2} are given.  The product has rank at
// most two, so its nonzero squared singular values are the eigenvalues of the
// 2x2 product (A^T A)(B^T B) with A = [x1, C*x2], B = [b, d].
double rank2_norm(const SideGram& col, const SideGram& row, double S,
                  double C) {
  const double a11 = col.g11;
  const double a12 = C * col.g12;
  const double a22 = C * C * col.g22;
  const double b11 = row.g11 + S * (2.0 * row.g12 + S * row.g22);
  const double b12 = row.g12 + S * row.g22;
  const double b22 = row.g22;
  const double trace = a11 * b11 + 2.0 * a12 * b12 + a22 * b22;
  const double det =
      (a11 * a22 - a12 * a12) * (b11 * b22 - b12 * b12);
  const double disc = std::max(0.0, trace * trace - 4.0 * det);
  return std::sqrt(std::max(0.0, 0.5 * (trace + std::sqrt(disc))));
}

}  // namespace

std::vector<double> pj_peak_values(double theta, int horizon) {
  if (horizon < 1)
    throw DegenerateInput("peak sequence horizon must be positive");
  const MatrixSet pj = pj_matrices(1.0 / 3.0, theta);
  const Matrix& a1 = pj.members[1];
  const int d = 3;

  // Powers of A1 with per-power column and row Gram data.
  std::vector<Matrix> pw;
  pw.reserve(static_cast<std::size_t>(horizon) + 1);
  pw.push_back(Matrix::identity(d));
  for (int t = 1; t <= horizon; ++t) pw.push_back(pw.back() * a1);
  std::vector<SideGram> colg(pw.size()), rowg(pw.size());
  for (std::size_t t = 0; t < pw.size(); ++t) {
    const Matrix& p = pw[t];
    SideGram cg, rg;
    for (int k = 0; k < d; ++k) {
      cg.g11 += p.at(k, 0) * p.at(k, 0);
      cg.g12 += p.at(k, 0) * p.at(k, 1);
      cg.g22 += p.at(k, 1) * p.at(k, 1);
      rg.g11 += p.at(0, k) * p.at(0, k);
      rg.g12 += p.at(0, k) * p.at(1, k);
      rg.g22 += p.at(1, k) * p.at(1, k);
    }
    colg[t] = cg;
    rowg[t] = rg;
  }

  std::vector<double> sin_u(static_cast<std::size_t>(horizon) + 1);
  std::vector<double> cos_u(static_cast<std::size_t>(horizon) + 1);
  for (int u = 0; u <= horizon; ++u) {
    sin_u[u] = std::sin(u * theta);
    cos_u[u] = std::cos(u * theta);
  }

  // hull[B] spans the interior states reachable with length budget <= B:
  // the bare projector is (S, C) = (0, 1) at budget 0, and appending an
  // interior block of u rotation steps costs u + 1 and acts affinely by
  // (S, C) -> (sin u*theta + S cos u*theta, C cos u*theta).
  std::vector<std::vector<HullPoint>> hull(
      static_cast<std::size_t>(horizon));
  hull[0] = {HullPoint{0.0, 1.0}};
  for (int B = 1; B < horizon; ++B) {
    std::vector<HullPoint> pts = hull[B - 1];
    for (int u = 1; u + 1 <= B; ++u)
      for (const HullPoint& p : hull[B - 1 - u])
        pts.push_back(
            HullPoint{sin_u[u] + p.s * cos_u[u], p.c * cos_u[u]});
    hull[B] = convex_hull(std::move(pts));
  }

  // a_n = max over the projector-free power A1^n and over every split
  // t0 + 1 + (interior budget B) + tk = n; shorter words containing the
  // projector pad to length n by duplicating it.
  std::vector<double> a(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    double best = op_norm(pw[n]);
    for (int t0 = 0; t0 < n; ++t0)
      for (int tk = 0; t0 + tk < n; ++tk) {
        const int B = n - 1 - t0 - tk;
        for (const HullPoint& v : hull[B])
          best = std::max(best, rank2_norm(colg[t0], rowg[tk], v.s, v.c));
      }
    a[n - 1] = best;
  }
  return a;
}

}  // namespace mirs
