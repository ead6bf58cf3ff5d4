#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace permdist {

/// Exact binomial coefficients from the Pascal recurrence, C(a,b) for
/// 0 <= a <= max_n.  Out-of-range b (b < 0 or b > a) yields 0 by convention;
/// a beyond the cache throws.  Immutable after construction and safe to
/// share across threads.
class BinomialCache {
public:
  explicit BinomialCache(int max_n);

  std::int64_t binom(int a, int b) const;

  /// (sum parts)! / prod parts!.  Requires sum parts <= max_n; throws
  /// std::overflow_error if the exact value exceeds the int64 range.
  std::int64_t multinomial(std::span<const int> parts) const;

  int max_n() const { return max_n_; }

  /// Process-wide cache with max_n = 64; every exact value used in this
  /// project fits in it.
  static const BinomialCache& shared();

private:
  std::int64_t* row(int a) { return table_.data() + a * (a + 1) / 2; }
  const std::int64_t* row(int a) const { return table_.data() + a * (a + 1) / 2; }

  int max_n_;
  std::vector<std::int64_t> table_;  // triangular, row a holds C(a,0..a)
};

/// ln C(a,b) for 0 <= b <= a.  exp(log_binom(a,b)) matches the exact value
/// to better than 1e-12 relative over the range of the shared cache.
double log_binom(int a, int b);

/// Cycle type of a permutation: counts[k-1] = number of k-cycles.
/// A valid class of S_n satisfies sum_k k * counts[k-1] == n.
struct CycleClass {
  std::vector<int> counts;

  int degree() const;  // sum k * counts[k-1]
};

/// One solution (q_1..q_m) of sum_k k*q_k == weight under per-part caps.
struct Composition {
  std::vector<int> parts;
  int weight = 0;
};

/// Enumerates all (q_1..q_m) with sum_k k*q_k == target and
/// 0 <= q_k <= caps[k-1], each exactly once, in lexicographic order.
/// Single-consumer; construct one per task.
class CompositionEnumerator {
public:
  CompositionEnumerator(int target, std::span<const int> caps);

  /// Writes the next composition into out; returns false when exhausted.
  bool next(Composition& out);

private:
  std::vector<std::vector<int>> all_;
  std::size_t pos_ = 0;
  int target_;
};

std::vector<Composition> enumerate_compositions(int target,
                                                std::span<const int> caps);

}  // namespace permdist
