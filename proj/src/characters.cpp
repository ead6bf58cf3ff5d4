#include "permdist/characters.hpp"

#include <stdexcept>

namespace permdist::characters {

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

void check_class(int n, const CycleClass& cls, const char* who) {
  if (cls.degree() != n || static_cast<int>(cls.counts.size()) > n) {
    throw std::domain_error(std::string(who) +
                            ": cycle counts do not describe a class of S_" +
                            std::to_string(n));
  }
}

// Sum over selections of q_k cycles of length k (q_k <= i_k) with total
// selected length `target`, of prod_k C(i_k, q_k).
std::int64_t selection_sum(const CycleClass& cls, int target) {
  if (target < 0) return 0;
  const auto& C = BinomialCache::shared();
  std::int64_t total = 0;
  for (const Composition& comp :
       enumerate_compositions(target, cls.counts)) {
    std::int64_t term = 1;
    for (std::size_t k = 0; k < comp.parts.size(); ++k) {
      term *= C.binom(cls.counts[k], comp.parts[k]);
    }
    total += term;
  }
  return total;
}

}  // namespace

std::vector<CycleClass> conjugacy_classes(int n) {
  if (n < 1 || n > 20) throw std::domain_error("conjugacy_classes: n in [1,20]");
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions_rec(n, n, cur, parts);
  std::vector<CycleClass> out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    CycleClass cls;
    cls.counts.assign(n, 0);
    for (int part : p) ++cls.counts[part - 1];
    out.push_back(std::move(cls));
  }
  return out;
}

std::int64_t class_size(const CycleClass& cls) {
  const int n = cls.degree();
  if (n > 20) throw std::domain_error("class_size: degree exceeds 20");
  std::int64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  std::int64_t denom = 1;
  for (std::size_t idx = 0; idx < cls.counts.size(); ++idx) {
    const int k = static_cast<int>(idx) + 1;
    for (int c = 0; c < cls.counts[idx]; ++c) denom *= k;
    for (int c = 2; c <= cls.counts[idx]; ++c) denom *= c;
  }
  return fact / denom;
}

std::int64_t perm_character(int n, int l, const CycleClass& cls) {
  check_class(n, cls, "perm_character");
  if (l < 0 || l > n) throw std::domain_error("perm_character: l outside [0,n]");
  return selection_sum(cls, l);
}

std::int64_t irrep_character(int n, int j, const CycleClass& cls) {
  check_class(n, cls, "irrep_character");
  if (j < 0 || 2 * j > n) {
    throw std::domain_error("irrep_character: need 0 <= 2j <= n");
  }
  return selection_sum(cls, j) - selection_sum(cls, j - 1);
}

std::vector<int> representative(const CycleClass& cls) {
  const int n = cls.degree();
  std::vector<int> perm(n);
  int base = 0;
  for (std::size_t idx = 0; idx < cls.counts.size(); ++idx) {
    const int k = static_cast<int>(idx) + 1;
    for (int c = 0; c < cls.counts[idx]; ++c) {
      for (int t = 0; t < k; ++t) perm[base + t] = base + (t + 1) % k;
      base += k;
    }
  }
  return perm;
}

std::int64_t count_fixed_weight_strings(const std::vector<int>& perm, int l) {
  const int n = static_cast<int>(perm.size());
  if (n > 24) throw std::domain_error("count_fixed_weight_strings: n > 24");
  std::int64_t count = 0;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    if (__builtin_popcount(x) != l) continue;
    std::uint32_t y = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (x & (1u << pos)) y |= (1u << perm[pos]);
    }
    if (y == x) ++count;
  }
  return count;
}

CharacterTableSlice build_character_table(int n) {
  CharacterTableSlice t;
  t.n = n;
  t.classes = conjugacy_classes(n);
  t.sizes.reserve(t.classes.size());
  for (const auto& cls : t.classes) t.sizes.push_back(class_size(cls));
  t.h_rows.resize(n + 1);
  for (int l = 0; l <= n; ++l) {
    for (const auto& cls : t.classes) {
      t.h_rows[l].push_back(perm_character(n, l, cls));
    }
  }
  t.b_rows.resize(n / 2 + 1);
  for (int j = 0; j <= n / 2; ++j) {
    for (const auto& cls : t.classes) {
      t.b_rows[j].push_back(irrep_character(n, j, cls));
    }
  }
  return t;
}

DecompositionReport verify_decomposition(int n) {
  DecompositionReport rep;
  const CharacterTableSlice t = build_character_table(n);
  rep.classes_checked = static_cast<int>(t.classes.size());

  // Class sizes partition |S_n|.
  std::int64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  std::int64_t size_sum = 0;
  for (auto s : t.sizes) size_sum += s;
  if (size_sum != fact) {
    rep.pass = false;
    rep.failures.push_back("class sizes sum to " + std::to_string(size_sum) +
                           ", expected " + std::to_string(fact));
  }

  // Locate the identity class (the one made of n fixed points).
  std::size_t id_idx = 0;
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    if (t.classes[c].counts[0] == n) id_idx = c;
  }

  for (int l = 0; 2 * l <= n; ++l) {
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
      std::int64_t sum = 0;
      for (int j = 0; j <= l; ++j) sum += t.b_rows[j][c];
      if (sum != t.h_rows[l][c]) {
        rep.pass = false;
        rep.failures.push_back(
            "chi^H_" + std::to_string(l) + " != sum chi^B on class " +
            std::to_string(c) + ": " + std::to_string(t.h_rows[l][c]) +
            " vs " + std::to_string(sum));
      }
    }
  }

  for (int j = 0; 2 * j <= n; ++j) {
    const std::int64_t dim = t.b_rows[j][id_idx];
    const std::int64_t expect = BinomialCache::shared().binom(n, j) -
                                BinomialCache::shared().binom(n, j - 1);
    if (dim != expect) {
      rep.pass = false;
      rep.failures.push_back("dim B_" + std::to_string(j) + " = " +
                             std::to_string(dim) + ", expected " +
                             std::to_string(expect));
    }
  }

  for (int a = 0; 2 * a <= n; ++a) {
    for (int b = a; 2 * b <= n; ++b) {
      std::int64_t inner = 0;
      for (std::size_t c = 0; c < t.classes.size(); ++c) {
        inner += t.sizes[c] * t.b_rows[a][c] * t.b_rows[b][c];
      }
      const std::int64_t expect = (a == b) ? fact : 0;
      if (inner != expect) {
        rep.pass = false;
        rep.failures.push_back("<chi^B_" + std::to_string(a) + ", chi^B_" +
                               std::to_string(b) + "> = " +
                               std::to_string(inner) + ", expected " +
                               std::to_string(expect));
      }
    }
  }
  return rep;
}

}  // namespace permdist::characters
