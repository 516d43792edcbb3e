#include "mirs/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include "mirs/errors.hpp"

namespace mirs {

namespace {

// Witness index sequences are packed little-endian at a fixed number of
// bits per symbol (enough for the member count of the set).
inline int words_for(int symbols, int bits) {
  return (symbols * bits + 63) / 64;
}

inline std::uint32_t wit_get(const std::uint64_t* w, int k, int bits) {
  const std::uint64_t mask = (1ull << bits) - 1;
  const std::size_t bitpos = static_cast<std::size_t>(k) * bits;
  const std::size_t word = bitpos >> 6;
  const int off = static_cast<int>(bitpos & 63);
  std::uint64_t v = w[word] >> off;
  if (off + bits > 64) v |= w[word + 1] << (64 - off);
  return static_cast<std::uint32_t>(v & mask);
}

inline void wit_set(std::uint64_t* w, int k, int bits, std::uint32_t sym) {
  const std::size_t bitpos = static_cast<std::size_t>(k) * bits;
  const std::size_t word = bitpos >> 6;
  const int off = static_cast<int>(bitpos & 63);
  w[word] |= static_cast<std::uint64_t>(sym) << off;
  if (off + bits > 64) w[word + 1] |= static_cast<std::uint64_t>(sym) >> (64 - off);
}

// Symbolwise lexicographic order; used only to break exact ties, so the
// loop almost never runs to the end.
inline int wit_compare(const std::uint64_t* a, const std::uint64_t* b, int n,
                       int bits) {
  for (int k = 0; k < n; ++k) {
    const std::uint32_t x = wit_get(a, k, bits);
    const std::uint32_t y = wit_get(b, k, bits);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  if (threads <= 1 || n < 8192) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(n, t * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

// Chunked sort plus pairwise merges. The comparator is a strict total
// order, so the sorted permutation is unique and the outcome does not
// depend on the chunking (hence not on the worker count).
template <class Cmp>
void deterministic_sort(std::vector<std::uint32_t>& idx, int threads, Cmp cmp) {
  const std::size_t n = idx.size();
  if (threads <= 1 || n < 1u << 16) {
    std::sort(idx.begin(), idx.end(), cmp);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::size_t> bounds{0};
  {
    std::vector<std::thread> pool;
    for (std::size_t lo = 0; lo < n; lo += chunk) {
      const std::size_t hi = std::min(n, lo + chunk);
      bounds.push_back(hi);
      pool.emplace_back(
          [&idx, lo, hi, &cmp] { std::sort(idx.begin() + lo, idx.begin() + hi, cmp); });
    }
    for (auto& th : pool) th.join();
  }
  while (bounds.size() > 2) {
    std::vector<std::size_t> next{0};
    for (std::size_t i = 1; i + 1 < bounds.size(); i += 2) {
      std::inplace_merge(idx.begin() + bounds[i - 1], idx.begin() + bounds[i],
                         idx.begin() + bounds[i + 1], cmp);
      next.push_back(bounds[i + 1]);
    }
    if (bounds.size() % 2 == 0) next.push_back(bounds.back());
    bounds = std::move(next);
  }
}

double op_norm_raw(const double* s, int d) {
  return op_norm(Matrix(d, d, std::vector<double>(s, s + std::size_t(d) * d)));
}

}  // namespace

int resolve_threads(const EngineConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("MIRS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string to_string(const Certificate& c) {
  switch (c.kind) {
    case Cert::Exact:
      return "Exact";
    case Cert::LowerBound:
      return "LowerBound";
    case Cert::Interval: {
      char buf[80];
      std::snprintf(buf, sizeof buf, "Interval(%.17g,%.17g)", c.lo, c.hi);
      return buf;
    }
  }
  return "?";
}

std::vector<int> Frontier::witness(std::size_t i) const {
  std::vector<int> w(length_);
  const std::uint64_t* p = wits_ + i * wit_words_;
  for (int k = 0; k < length_; ++k) w[k] = static_cast<int>(wit_get(p, k, bits_));
  return w;
}

MirsResult compute_mirs(const MatrixSet& set, int horizon,
                        const EngineConfig& config, const LevelObserver& observer) {
  set.validate();
  if (horizon < 1) throw DegenerateInput("horizon must be at least 1");
  if (set.dim > kMaxDim) throw SizeOverflow("set dimension exceeds the maximum");

  const int d = set.dim;
  const std::size_t dd = static_cast<std::size_t>(d) * d;
  const int m = static_cast<int>(set.size());
  int bits = 1;
  while ((1 << bits) < m) ++bits;
  const int threads = resolve_threads(config);
  const double tau = config.dedup_tol;
  const double tie_eps = 1e-12;

  std::vector<double> members(m * dd);
  for (int s = 0; s < m; ++s)
    std::copy(set.members[s].data().begin(), set.members[s].data().end(),
              members.begin() + s * dd);

  MirsResult res;
  res.set_label = set.name.empty() ? "set" : set.name;
  res.horizon = horizon;
  {
    char buf[160];
    std::snprintf(buf, sizeof buf, "frontier-dedup tol=%g capacity=%zu beam=%zu",
                  config.dedup_tol, config.capacity, config.beam_width);
    res.method = buf;
  }

  std::vector<double> cur_mats(dd, 0.0);
  for (int i = 0; i < d; ++i) cur_mats[i * d + i] = 1.0;
  std::vector<std::uint64_t> cur_wits;  // zero words at length 0
  std::size_t cur_count = 1;

  std::vector<double> cand_mats, next_mats;
  std::vector<std::uint64_t> cand_wits, next_wits;
  std::vector<std::int64_t> keys;
  std::vector<std::uint32_t> idx, keep;
  std::vector<double> norms, fro;

  bool degraded = false;

  for (int n = 1; n <= horizon; ++n) {
    const int w_prev = words_for(n - 1, bits);
    const int w_now = words_for(n, bits);
    const std::size_t raw = cur_count * m;

    cand_mats.assign(raw * dd, 0.0);
    cand_wits.assign(raw * w_now, 0);
    parallel_for(cur_count, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const double* S = &cur_mats[i * dd];
        for (int s = 0; s < m; ++s) {
          const double* A = &members[s * dd];
          double* C = &cand_mats[(i * m + s) * dd];
          for (int r = 0; r < d; ++r) {
            const double* Sr = S + r * d;
            double* Cr = C + r * d;
            for (int k = 0; k < d; ++k) {
              const double v = Sr[k];
              if (v == 0.0) continue;
              const double* Ak = A + k * d;
              for (int j = 0; j < d; ++j) Cr[j] += v * Ak[j];
            }
          }
          std::uint64_t* W = &cand_wits[(i * m + s) * w_now];
          for (int k = 0; k < w_prev; ++k) W[k] = cur_wits[i * w_prev + k];
          wit_set(W, n - 1, bits, static_cast<std::uint32_t>(s));
        }
      }
    });

    // Canonical keys: entries rounded to the dedup lattice (saturated so
    // out-of-range magnitudes cannot overflow the integer key).
    keys.resize(raw * dd);
    parallel_for(raw * dd, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t e = lo; e < hi; ++e) {
        double v = cand_mats[e] / tau;
        if (v > 9.0e18) v = 9.0e18;
        if (v < -9.0e18) v = -9.0e18;
        keys[e] = std::llround(v);
      }
    });

    idx.resize(raw);
    for (std::size_t i = 0; i < raw; ++i) idx[i] = static_cast<std::uint32_t>(i);
    const auto canonical_less = [&](std::uint32_t a, std::uint32_t b) {
      const std::int64_t* ka = &keys[a * dd];
      const std::int64_t* kb = &keys[b * dd];
      for (std::size_t e = 0; e < dd; ++e)
        if (ka[e] != kb[e]) return ka[e] < kb[e];
      return wit_compare(&cand_wits[a * std::size_t(w_now)],
                         &cand_wits[b * std::size_t(w_now)], n, bits) < 0;
    };
    deterministic_sort(idx, threads, canonical_less);

    // First representative of each lattice cell survives; within a cell
    // the sort already put the lexicographically smallest witness first.
    keep.clear();
    for (std::size_t i = 0; i < raw; ++i) {
      if (!keep.empty()) {
        const std::int64_t* ka = &keys[idx[i] * dd];
        const std::int64_t* kb = &keys[keep.back() * dd];
        bool same = true;
        for (std::size_t e = 0; e < dd; ++e)
          if (ka[e] != kb[e]) {
            same = false;
            break;
          }
        if (same) continue;
      }
      keep.push_back(idx[i]);
    }
    const std::size_t kept = keep.size();

    // The key and index arrays are the largest transient buffers; release
    // them before the kept states are gathered so the per-level peak stays
    // near two copies of the frontier instead of four.
    keys.clear();
    keys.shrink_to_fit();
    idx.clear();
    idx.shrink_to_fit();

    if (kept > config.capacity && !degraded) {
      if (config.exact_or_fail)
        throw CapacityExceeded("frontier needs " + std::to_string(kept) +
                               " states at length " + std::to_string(n) +
                               ", capacity is " + std::to_string(config.capacity));
      degraded = true;
    }

    next_mats.resize(kept * dd);
    next_wits.resize(kept * w_now);
    parallel_for(kept, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint32_t src = keep[i];
        std::copy_n(&cand_mats[src * dd], dd, &next_mats[i * dd]);
        std::copy_n(&cand_wits[src * std::size_t(w_now)], w_now,
                    &next_wits[i * std::size_t(w_now)]);
      }
    });
    cand_mats.clear();
    cand_mats.shrink_to_fit();
    cand_wits.clear();
    cand_wits.shrink_to_fit();

    const bool need_all_norms = degraded && kept > config.beam_width;

    norms.assign(kept, -1.0);
    double best = -1.0;
    std::size_t best_i = 0;
    if (need_all_norms) {
      parallel_for(kept, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
          norms[i] = op_norm_raw(&next_mats[i * dd], d);
      });
      for (std::size_t i = 0; i < kept; ++i)
        if (norms[i] > best) {
          best = norms[i];
          best_i = i;
        }
      for (std::size_t i = 0; i < kept; ++i)
        if (norms[i] >= best - tie_eps && i != best_i &&
            wit_compare(&next_wits[i * std::size_t(w_now)],
                        &next_wits[best_i * std::size_t(w_now)], n, bits) < 0)
          best_i = i;
    } else {
      // The Frobenius norm dominates the operator norm, so after seeding
      // with the largest-Frobenius state only states whose Frobenius norm
      // still reaches the running maximum need an exact evaluation.
      fro.resize(kept);
      parallel_for(kept, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          double s = 0;
          const double* p = &next_mats[i * dd];
          for (std::size_t e = 0; e < dd; ++e) s += p[e] * p[e];
          fro[i] = std::sqrt(s);
        }
      });
      std::vector<std::uint32_t> order;
      order.reserve(256);
      std::size_t seed = 0;
      for (std::size_t i = 1; i < kept; ++i)
        if (fro[i] > fro[seed]) seed = i;
      best = op_norm_raw(&next_mats[seed * dd], d);
      norms[seed] = best;
      best_i = seed;
      for (std::size_t i = 0; i < kept; ++i)
        if (i != seed && fro[i] >= best - tie_eps)
          order.push_back(static_cast<std::uint32_t>(i));
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (fro[a] != fro[b]) return fro[a] > fro[b];
        return a < b;
      });
      for (const std::uint32_t i : order) {
        if (fro[i] < best - tie_eps) break;
        norms[i] = op_norm_raw(&next_mats[i * dd], d);
        if (norms[i] > best) {
          best = norms[i];
          best_i = i;
        }
      }
      for (const std::uint32_t i : order) {
        if (norms[i] < 0) continue;
        if (norms[i] >= best - tie_eps && i != best_i &&
            wit_compare(&next_wits[i * std::size_t(w_now)],
                        &next_wits[best_i * std::size_t(w_now)], n, bits) < 0)
          best_i = i;
      }
    }

    res.values.push_back(best);
    res.certificates.push_back(
        Certificate{degraded ? Cert::LowerBound : Cert::Exact, 0, 0});
    {
      std::vector<int> w(n);
      const std::uint64_t* p = &next_wits[best_i * std::size_t(w_now)];
      for (int k = 0; k < n; ++k) w[k] = static_cast<int>(wit_get(p, k, bits));
      res.witnesses.push_back(std::move(w));
    }

    if (observer)
      observer(Frontier(n, d, kept, next_mats.data(), next_wits.data(), w_now,
                        bits, !degraded));

    if (degraded && kept > config.beam_width && n < horizon) {
      // Top beam_width states by operator norm, plus the same count by
      // each column norm; the marked union survives in canonical order.
      const std::size_t K = config.beam_width;
      std::vector<char> mark(kept, 0);
      std::vector<std::uint32_t> rank(kept);
      for (std::size_t i = 0; i < kept; ++i) rank[i] = static_cast<std::uint32_t>(i);
      const auto take_top = [&](auto value_of) {
        std::nth_element(rank.begin(), rank.begin() + K, rank.end(),
                         [&](std::uint32_t a, std::uint32_t b) {
                           const double va = value_of(a), vb = value_of(b);
                           if (va != vb) return va > vb;
                           return a < b;
                         });
        for (std::size_t i = 0; i < K; ++i) mark[rank[i]] = 1;
      };
      take_top([&](std::uint32_t i) { return norms[i]; });
      std::vector<double> colnorm(kept);
      for (int j = 0; j < d; ++j) {
        parallel_for(kept, threads, [&](std::size_t lo, std::size_t hi) {
          for (std::size_t i = lo; i < hi; ++i) {
            double s = 0;
            const double* p = &next_mats[i * dd];
            for (int r = 0; r < d; ++r) s += p[r * d + j] * p[r * d + j];
            colnorm[i] = s;
          }
        });
        for (std::size_t i = 0; i < kept; ++i) rank[i] = static_cast<std::uint32_t>(i);
        take_top([&](std::uint32_t i) { return colnorm[i]; });
      }
      std::size_t out = 0;
      for (std::size_t i = 0; i < kept; ++i) {
        if (!mark[i]) continue;
        if (out != i) {
          std::copy_n(&next_mats[i * dd], dd, &next_mats[out * dd]);
          std::copy_n(&next_wits[i * std::size_t(w_now)], w_now,
                      &next_wits[out * std::size_t(w_now)]);
        }
        ++out;
      }
      next_mats.resize(out * dd);
      next_wits.resize(out * std::size_t(w_now));
      cur_count = out;
    } else {
      cur_count = kept;
    }

    cur_mats.swap(next_mats);
    cur_wits.swap(next_wits);
  }

  return res;
}

std::vector<double> mirs_upper_bound(const MirsResult& result, int horizon) {
  const int exact = result.exact_prefix();
  if (exact == 0)
    throw InsufficientPrefix("upper-bound extension needs an exact prefix");
  std::vector<double> u(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (int n = 1; n <= horizon; ++n) {
    if (n <= exact) {
      u[n] = result.at(n);
      continue;
    }
    double bound = std::numeric_limits<double>::infinity();
    for (int k = 1; k < n; ++k) bound = std::min(bound, u[k] * u[n - k]);
    u[n] = bound;
  }
  return std::vector<double>(u.begin() + 1, u.end());
}

double evaluate_witness(const MatrixSet& set, const std::vector<int>& witness) {
  set.validate();
  Matrix p = Matrix::identity(set.dim);
  for (const int s : witness) {
    if (s < 0 || s >= static_cast<int>(set.size()))
      throw IndexOutOfRange("witness symbol " + std::to_string(s) +
                            " outside the member range");
    p = p * set.members[s];
  }
  return op_norm(p);
}

}  // namespace mirs
