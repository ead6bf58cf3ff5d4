#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "permdist/combinatorics.hpp"

using namespace permdist;

TEST_CASE("binomial values and conventions") {
  const auto& C = BinomialCache::shared();
  CHECK(C.binom(4, 2) == 6);
  CHECK(C.binom(12, 6) == 924);
  CHECK(C.binom(5, -1) == 0);
  CHECK(C.binom(5, 6) == 0);
  CHECK(C.binom(0, 0) == 1);
  CHECK(C.binom(64, 32) == 1832624140942590534LL);
  CHECK_THROWS_AS(C.binom(65, 3), std::domain_error);
  CHECK_THROWS_AS(C.binom(-1, 0), std::domain_error);
}

TEST_CASE("binomial rows sum to powers of two") {
  const auto& C = BinomialCache::shared();
  for (int a = 0; a <= 20; ++a) {
    std::int64_t sum = 0;
    for (int b = 0; b <= a; ++b) sum += C.binom(a, b);
    CHECK(sum == (std::int64_t{1} << a));
  }
}

TEST_CASE("Vandermonde identity under the row-sum reading") {
  const auto& C = BinomialCache::shared();
  for (int n = 0; n <= 20; ++n) {
    for (int l = 0; l <= n; ++l) {
      std::int64_t sum = 0;
      for (int k = 0; k <= l; ++k) sum += C.binom(n - l, k) * C.binom(l, k);
      CHECK(sum == C.binom(n, l));
    }
  }
}

TEST_CASE("log_binom accuracy") {
  const auto& C = BinomialCache::shared();
  CHECK(log_binom(10, 0) == 0.0);
  CHECK(std::abs(std::exp(log_binom(4, 2)) - 6.0) / 6.0 <= 1e-12);
  CHECK(std::abs(std::exp(log_binom(16, 8)) - 12870.0) / 12870.0 <= 1e-12);
  for (int a = 0; a <= 64; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double exact = static_cast<double>(C.binom(a, b));
      const double rel = std::abs(std::exp(log_binom(a, b)) - exact) / exact;
      CHECK(rel <= 1e-12);
    }
  }
  CHECK_THROWS_AS(log_binom(4, 5), std::domain_error);
  CHECK_THROWS_AS(log_binom(4, -1), std::domain_error);
}

TEST_CASE("multinomial") {
  const auto& C = BinomialCache::shared();
  CHECK(C.multinomial(std::vector<int>{1, 1}) == 2);
  CHECK(C.multinomial(std::vector<int>{2, 2}) == 6);
  CHECK(C.multinomial(std::vector<int>{2, 1, 1}) == 12);
  CHECK(C.multinomial(std::vector<int>{0, 5}) == 1);
  CHECK(C.multinomial(std::vector<int>{}) == 1);
  // Oracle: product of binomials along prefixes.
  CHECK(C.multinomial(std::vector<int>{3, 4, 5}) ==
        C.binom(12, 3) * C.binom(9, 4));
  CHECK_THROWS_AS(C.multinomial(std::vector<int>{60, 10}), std::domain_error);
  CHECK_THROWS_AS(
      C.multinomial(std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
                                     1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}),
      std::overflow_error);
}

TEST_CASE("composition enumeration under caps") {
  SUBCASE("target zero yields the single empty solution") {
    const auto got = enumerate_compositions(0, std::vector<int>{3, 2, 1});
    REQUIRE(got.size() == 1);
    CHECK(got[0].parts == std::vector<int>{0, 0, 0});
    CHECK(got[0].weight == 0);
  }
  SUBCASE("two ones plus one two-cycle cap") {
    const auto got = enumerate_compositions(2, std::vector<int>{2, 1, 0, 0});
    REQUIRE(got.size() == 2);
    CHECK(got[0].parts == std::vector<int>{0, 1, 0, 0});
    CHECK(got[1].parts == std::vector<int>{2, 0, 0, 0});
  }
  SUBCASE("tight caps leave one solution") {
    const auto got = enumerate_compositions(3, std::vector<int>{1, 1, 0});
    REQUIRE(got.size() == 1);
    CHECK(got[0].parts == std::vector<int>{1, 1, 0});
  }
  SUBCASE("no solutions is an empty sequence") {
    CHECK(enumerate_compositions(5, std::vector<int>{0, 0, 1}).empty());
  }
}

namespace {

// Independent oracle: number of partitions of t with parts <= n.
int count_partitions(int t, int max_part) {
  if (t == 0) return 1;
  if (max_part == 0) return 0;
  int total = 0;
  for (int take = 0; take * max_part <= t; ++take) {
    total += count_partitions(t - take * max_part, max_part - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("uncapped compositions count restricted partitions") {
  for (int n = 1; n <= 6; ++n) {
    for (int t = 0; t <= 12; ++t) {
      std::vector<int> caps(n, t);  // effectively unbounded
      const auto got = enumerate_compositions(t, caps);
      CHECK(static_cast<int>(got.size()) == count_partitions(t, n));
      // Every solution exactly once.
      std::set<std::vector<int>> uniq;
      for (const auto& comp : got) {
        int weight = 0;
        for (int k = 0; k < n; ++k) weight += (k + 1) * comp.parts[k];
        CHECK(weight == t);
        uniq.insert(comp.parts);
      }
      CHECK(uniq.size() == got.size());
    }
  }
}

TEST_CASE("enumerator is single-consumer and restartable by construction") {
  CompositionEnumerator en(2, std::vector<int>{2, 1});
  Composition c;
  int count = 0;
  while (en.next(c)) ++count;
  CHECK(count == 2);
  CHECK_FALSE(en.next(c));
}

TEST_CASE("cycle class degree") {
  CycleClass cls;
  cls.counts = {2, 1, 0, 0};
  CHECK(cls.degree() == 4);
}
