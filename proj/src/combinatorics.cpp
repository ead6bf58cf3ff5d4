#include "permdist/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "permdist/types.hpp"

namespace permdist {

BinomialCache::BinomialCache(int max_n) : max_n_(max_n) {
  if (max_n < 0 || max_n > 66) {
    // C(67,33) overflows int64; refuse to build a table that silently wraps.
    throw std::domain_error("BinomialCache: max_n must be in [0, 66]");
  }
  table_.resize(static_cast<std::size_t>(max_n + 1) * (max_n + 2) / 2);
  for (int a = 0; a <= max_n; ++a) {
    auto* r = row(a);
    r[0] = r[a] = 1;
    const auto* prev = row(a - 1 < 0 ? 0 : a - 1);
    for (int b = 1; b < a; ++b) r[b] = prev[b - 1] + prev[b];
  }
}

std::int64_t BinomialCache::binom(int a, int b) const {
  if (a < 0 || a > max_n_) {
    throw std::domain_error("binom: a = " + std::to_string(a) +
                            " outside cache range [0, " +
                            std::to_string(max_n_) + "]");
  }
  if (b < 0 || b > a) return 0;
  return row(a)[b];
}

std::int64_t BinomialCache::multinomial(std::span<const int> parts) const {
  long long total = 0;
  for (int p : parts) {
    if (p < 0) throw std::domain_error("multinomial: negative part");
    total += p;
  }
  if (total > max_n_) {
    throw std::domain_error("multinomial: sum of parts " +
                            std::to_string(total) + " exceeds cache max_n " +
                            std::to_string(max_n_));
  }
  __int128 acc = 1;
  int prefix = 0;
  for (int p : parts) {
    prefix += p;
    acc *= binom(prefix, p);
    if (acc > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("multinomial: exact value exceeds int64");
    }
  }
  return static_cast<std::int64_t>(acc);
}

const BinomialCache& BinomialCache::shared() {
  static const BinomialCache cache(64);
  return cache;
}

double log_binom(int a, int b) {
  if (b < 0 || b > a) {
    throw std::domain_error("log_binom: b = " + std::to_string(b) +
                            " outside [0, " + std::to_string(a) + "]");
  }
  // Log-factorials accumulated in extended precision so the double result is
  // correct to rounding over the whole table.
  static const std::vector<double> lf = [] {
    std::vector<double> t(2049);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      acc += std::log(static_cast<long double>(i));
      t[i] = static_cast<double>(acc);
    }
    return t;
  }();
  if (a < static_cast<int>(lf.size())) return lf[a] - lf[b] - lf[a - b];
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

int CycleClass::degree() const {
  int n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    n += static_cast<int>(i + 1) * counts[i];
  }
  return n;
}

namespace {

void collect(int pos, int remaining, std::span<const int> caps,
             std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos == static_cast<int>(caps.size())) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const int part = pos + 1;
  // Remaining capacity of the suffix bounds the search.
  long long suffix_cap = 0;
  for (int t = pos; t < static_cast<int>(caps.size()); ++t) {
    suffix_cap += static_cast<long long>(t + 1) * caps[t];
  }
  if (suffix_cap < remaining) return;
  const int hi = std::min(caps[pos], remaining / part);
  for (int q = 0; q <= hi; ++q) {
    cur[pos] = q;
    collect(pos + 1, remaining - part * q, caps, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

CompositionEnumerator::CompositionEnumerator(int target,
                                             std::span<const int> caps)
    : target_(target) {
  if (target < 0) throw std::domain_error("compositions: negative target");
  for (int c : caps) {
    if (c < 0) throw std::domain_error("compositions: negative cap");
  }
  std::vector<int> cur(caps.size(), 0);
  collect(0, target, caps, cur, all_);
}

bool CompositionEnumerator::next(Composition& out) {
  if (pos_ >= all_.size()) return false;
  out.parts = all_[pos_++];
  out.weight = target_;
  return true;
}

std::vector<Composition> enumerate_compositions(int target,
                                                std::span<const int> caps) {
  CompositionEnumerator en(target, caps);
  std::vector<Composition> out;
  Composition c;
  while (en.next(c)) out.push_back(c);
  return out;
}

std::int64_t SectorIndex::dimension() const {
  return BinomialCache::shared().binom(n, l);
}

MixParam MixParam::from_q(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("MixParam::from_q: q must lie in [0, 1]");
  }
  return MixParam{2.0 * q - 1.0};
}

void validate_sector(const SectorIndex& s) {
  if (s.n < 1 || s.l < 0 || s.l > s.n) {
    throw std::domain_error("sector (n=" + std::to_string(s.n) +
                            ", l=" + std::to_string(s.l) + ") is invalid");
  }
}

}  // namespace permdist
