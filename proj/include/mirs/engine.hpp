#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mirs/linalg.hpp"
#include "mirs/matrix.hpp"

namespace mirs {

struct EngineConfig {
  // Two frontier states are duplicates when their entries round to the
  // same lattice point at this resolution.
  double dedup_tol = 1e-10;
  // Maximum deduplicated frontier size before entries degrade from Exact
  // to LowerBound.
  std::size_t capacity = 2'000'000;
  // Beam kept after degradation: the top states by operator norm plus the
  // top states by each column norm (norm-greedy beams alone are known to
  // miss slow-burn witnesses; column diversity mitigates this cheaply).
  std::size_t beam_width = 100'000;
  // Throw CapacityExceeded instead of degrading.
  bool exact_or_fail = false;
  // 0 resolves to MIRS_THREADS or the hardware concurrency. Results are
  // bit-identical for every value.
  int threads = 0;
};

int resolve_threads(const EngineConfig& config);

enum class Cert : std::uint8_t { Exact, LowerBound, Interval };

struct Certificate {
  Cert kind = Cert::Exact;
  double lo = 0.0;  // populated for Interval entries only
  double hi = 0.0;

  bool exact() const { return kind == Cert::Exact; }
};

std::string to_string(const Certificate& c);

// The sequence a_n = max norm over all length-n products of a set,
// with one certified entry and one witness index sequence per n.
struct MirsResult {
  std::string set_label;
  int horizon = 0;
  std::vector<double> values;               // values[n-1] holds a_n
  std::vector<Certificate> certificates;
  std::vector<std::vector<int>> witnesses;  // witnesses[n-1] has length n
  std::string method;

  double at(int n) const { return values.at(static_cast<std::size_t>(n) - 1); }
  const Certificate& cert(int n) const {
    return certificates.at(static_cast<std::size_t>(n) - 1);
  }
  // Number of leading entries certified Exact.
  int exact_prefix() const {
    int k = 0;
    while (k < horizon && certificates[k].exact()) ++k;
    return k;
  }
};

// Read-only view of the deduplicated set of distinct length-n products,
// handed to level observers before any beam truncation. `exhausted` is
// true while the dedup capacity has been respected at every level so far,
// i.e. while the enumeration is still exhaustive and entries are Exact.
class Frontier {
 public:
  Frontier(int length, int dim, std::size_t count, const double* mats,
           const std::uint64_t* wits, int wit_words, int bits, bool exhausted)
      : length_(length), dim_(dim), count_(count), mats_(mats), wits_(wits),
        wit_words_(wit_words), bits_(bits), exhausted_(exhausted) {}

  int length() const { return length_; }
  int dim() const { return dim_; }
  std::size_t count() const { return count_; }
  bool exhausted() const { return exhausted_; }

  Matrix state(std::size_t i) const {
    const std::size_t dd = static_cast<std::size_t>(dim_) * dim_;
    return Matrix(dim_, dim_,
                  std::vector<double>(mats_ + i * dd, mats_ + (i + 1) * dd));
  }
  const double* state_data(std::size_t i) const {
    return mats_ + i * static_cast<std::size_t>(dim_) * dim_;
  }
  std::vector<int> witness(std::size_t i) const;

 private:
  int length_;
  int dim_;
  std::size_t count_;
  const double* mats_;
  const std::uint64_t* wits_;
  int wit_words_;
  int bits_;
  bool exhausted_;
};

using LevelObserver = std::function<void(const Frontier&)>;

// Computes a_1..a_N by frontier recursion: the states of length n+1 are
// {S*A : S in frontier(n), A in set}, deduplicated on a rounded-entry
// lattice in a canonical order, so the result is independent of
// generation order and worker count. Entries are Exact while the frontier
// fits the capacity and certified LowerBound afterwards (beam search).
MirsResult compute_mirs(const MatrixSet& set, int horizon,
                        const EngineConfig& config = {},
                        const LevelObserver& observer = nullptr);

// Submultiplicative extension u_n >= a_n with u_n = a_n on the Exact
// prefix and u_n = min over splits u_k * u_{n-k} beyond it.
std::vector<double> mirs_upper_bound(const MirsResult& result, int horizon);

// Norm of the explicit ordered product A_{w_1} * ... * A_{w_n}; the
// independent certification path for reported entries. The empty witness
// evaluates to 1 (identity).
double evaluate_witness(const MatrixSet& set, const std::vector<int>& witness);

}  // namespace mirs
