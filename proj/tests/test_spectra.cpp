#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "permdist/combinatorics.hpp"
#include "permdist/oracle.hpp"
#include "permdist/spectra.hpp"

using namespace permdist;

TEST_CASE("alpha_0 is always one") {
  for (int n : {2, 5, 9}) {
    for (int l = 0; l <= n; ++l) {
      const SectorIndex s{n, l};
      for (int j = 0; j <= s.j_max(); ++j) {
        CHECK(spectra::alpha_young(s, 0, j) == 1);
        CHECK(spectra::alpha_hahn(s, 0, j) == 1);
      }
    }
  }
}

TEST_CASE("two copies, weight one") {
  const SectorIndex s{2, 1};
  CHECK(spectra::alpha_young(s, 1, 0) == 1);
  CHECK(spectra::alpha_young(s, 1, 1) == -1);
}

TEST_CASE("weight-2 sector of four copies matches the dense adjacency spectra") {
  const SectorIndex s{4, 2};
  const oracle::WeightBasis basis(4, 2);
  for (int k = 0; k <= 2; ++k) {
    std::vector<double> expected;
    for (int j = 0; j <= 2; ++j) {
      expected.insert(expected.end(), spectra::multiplicity(4, j),
                      static_cast<double>(spectra::alpha_young(s, k, j)));
    }
    std::sort(expected.begin(), expected.end());
    const auto got =
        oracle::eigenvalues(oracle::to_double(oracle::build_adjacency(basis, k)));
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("column j=0 carries the row sums") {
  const auto& C = BinomialCache::shared();
  for (int n : {3, 6, 10}) {
    for (int l = 0; l <= n; ++l) {
      const SectorIndex s{n, l};
      for (int k = 0; k <= s.j_max(); ++k) {
        CHECK(spectra::alpha_young(s, k, 0) ==
              C.binom(n - l, k) * C.binom(l, k));
      }
    }
  }
}

TEST_CASE("trace of every adjacency operator vanishes for k >= 1") {
  // sum_j f_j alpha_k(j) = tr A_k = 0 for k >= 1 and C(n,l) for k = 0.
  for (int n : {4, 7, 11}) {
    for (int l = 0; l <= n; ++l) {
      const SectorIndex s{n, l};
      const auto table = spectra::adjacency_eig_table(s);
      for (int k = 0; k <= s.j_max(); ++k) {
        std::int64_t tr = 0;
        for (int j = 0; j <= s.j_max(); ++j) {
          tr += spectra::multiplicity(n, j) * table.values[k][j];
        }
        CHECK(tr == (k == 0 ? s.dimension() : 0));
      }
    }
  }
}

TEST_CASE("j=l closed form") {
  const auto& C = BinomialCache::shared();
  for (int n : {4, 6, 9}) {
    for (int l = 0; 2 * l <= n; ++l) {
      for (int k = 0; k <= l; ++k) {
        const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
        CHECK(spectra::alpha_hahn({n, l}, k, l) == sign * C.binom(l, k));
      }
    }
  }
}

TEST_CASE("young and hahn routes agree on a six-copy sector") {
  const SectorIndex s{6, 3};
  for (int k = 0; k <= 3; ++k) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(spectra::alpha_young(s, k, j) == spectra::alpha_hahn(s, k, j));
    }
  }
}

namespace {

// Exact-rational accumulator for the terminating hypergeometric series.
struct Rational {
  long long num = 0, den = 1;
  void add(long long n2, long long d2) {
    num = num * d2 + n2 * den;
    den *= d2;
    const long long g = std::gcd(std::abs(num), std::abs(den));
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (den < 0) {
      den = -den;
      num = -num;
    }
  }
};

// Dual Hahn polynomial as a 3F2 series:
// E_k(u) = (-1)^k C(l,k) sum_s [(-k)_s (-l+u)_s (n-l-u+1)_s] / [(-l)_s (1)_s s!]
long long dual_hahn_3f2(int n, int l, int k, int u) {
  Rational acc;
  acc.add(1, 1);
  long long p1 = 1, p2 = 1, p3 = 1, q1 = 1, q2 = 1, q3 = 1;
  for (int s = 1; s <= k; ++s) {
    p1 *= -k + (s - 1);
    p2 *= -l + u + (s - 1);
    p3 *= n - l - u + 1 + (s - 1);
    q1 *= -l + (s - 1);
    q2 *= s;  // (1)_s
    q3 *= s;  // s!
    acc.add(p1 * p2 * p3, q1 * q2 * q3);
  }
  const auto& C = BinomialCache::shared();
  const long long front = ((k % 2 == 0) ? 1 : -1) * C.binom(l, k);
  REQUIRE((front * acc.num) % acc.den == 0);
  return front * acc.num / acc.den;
}

}  // namespace

TEST_CASE("hahn route equals the hypergeometric dual Hahn series") {
  for (int n = 2; n <= 10; ++n) {
    for (int l = 1; 2 * l <= n; ++l) {
      for (int k = 0; k <= l; ++k) {
        for (int j = 0; j <= l; ++j) {
          CHECK(spectra::alpha_hahn({n, l}, k, j) == dual_hahn_3f2(n, l, k, j));
        }
      }
    }
  }
}

TEST_CASE("alpha argument validation") {
  CHECK_THROWS_AS(spectra::alpha_young({4, 2}, 3, 0), std::domain_error);
  CHECK_THROWS_AS(spectra::alpha_young({4, 2}, 0, -1), std::domain_error);
  CHECK_THROWS_AS(spectra::alpha_hahn({4, 2}, 0, 3), std::domain_error);
  CHECK_THROWS_AS(spectra::alpha_young({4, 5}, 0, 0), std::domain_error);
}

TEST_CASE("multiplicity formula") {
  CHECK(spectra::multiplicity(4, 0) == 1);
  CHECK(spectra::multiplicity(4, 1) == 3);
  CHECK(spectra::multiplicity(4, 2) == 2);
  const auto& C = BinomialCache::shared();
  for (int l = 0; l <= 10; ++l) {
    std::int64_t sum = 0;
    for (int j = 0; j <= std::min(l, 10 - l); ++j) {
      sum += spectra::multiplicity(10, j);
    }
    CHECK(sum == C.binom(10, l));
  }
  CHECK_THROWS_AS(spectra::multiplicity(4, 3), std::domain_error);
}

TEST_CASE("spectrum at p = 0 is flat") {
  const Spectrum spec = spectra::rho_spectrum({5, 2}, MixParam{0.0});
  for (const auto& e : spec.entries) {
    CHECK(e.value == std::ldexp(1.0, -5));
  }
}

TEST_CASE("weight-one sectors have exactly the two-eigenvalue form") {
  for (int n : {2, 5, 12, 16}) {
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
      const Spectrum spec = spectra::rho_spectrum({n, 1}, MixParam{p});
      REQUIRE(spec.entries.size() == 2);
      CHECK(spec.entries[0].value ==
            doctest::Approx((1 + (n - 1) * p * p) / std::ldexp(1.0, n))
                .epsilon(1e-14));
      CHECK(spec.entries[1].value ==
            doctest::Approx((1 - p * p) / std::ldexp(1.0, n)).epsilon(1e-14));
      CHECK(spec.entries[0].multiplicity == 1);
      CHECK(spec.entries[1].multiplicity == n - 1);
    }
  }
}

TEST_CASE("pure inputs compress to rank one") {
  const Spectrum spec = spectra::rho_spectrum({6, 2}, MixParam{1.0});
  CHECK(spec.entries[0].value ==
        static_cast<double>(SectorIndex{6, 2}.dimension()) / 64.0);
  for (std::size_t j = 1; j < spec.entries.size(); ++j) {
    CHECK(spec.entries[j].value == 0.0);
  }
}

TEST_CASE("trace equals C(n,l)/2^n") {
  for (int n = 1; n <= 16; ++n) {
    for (int l = 0; l <= n; ++l) {
      const Spectrum spec = spectra::rho_spectrum({n, l}, MixParam{0.6});
      const double expected =
          static_cast<double>(SectorIndex{n, l}.dimension()) *
          std::ldexp(1.0, -n);
      CHECK(spec.trace == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("spectral radius") {
  CHECK(spectra::spectral_radius({2, 1}, MixParam{0.6}) ==
        doctest::Approx(0.34).epsilon(1e-15));
  CHECK(spectra::spectral_radius({5, 2}, MixParam{0.0}) ==
        std::ldexp(1.0, -5));
  CHECK(spectra::spectral_radius({6, 2}, MixParam{1.0}) ==
        doctest::Approx(15.0 / 64.0).epsilon(1e-15));
  for (int l = 0; l <= 7; ++l) {
    for (double p : {0.2, 0.7, 1.0}) {
      const Spectrum spec = spectra::rho_spectrum({7, l}, MixParam{p});
      double top = 0.0;
      for (const auto& e : spec.entries) top = std::max(top, e.value);
      const double radius = spectra::spectral_radius({7, l}, MixParam{p});
      CHECK(radius == doctest::Approx(spec.entries[0].value).epsilon(1e-14));
      CHECK(radius == doctest::Approx(top).epsilon(1e-14));
      CHECK(radius < 1.0);
    }
  }
}

TEST_CASE("sector entropy limits") {
  CHECK(spectra::sector_entropy({6, 3}, MixParam{1.0}) == 0.0);
  CHECK(spectra::sector_entropy({6, 3}, MixParam{0.0}) ==
        doctest::Approx(std::log2(20.0)).epsilon(1e-14));
  const double h2 = -0.625 * std::log2(0.625) - 0.375 * std::log2(0.375);
  CHECK(spectra::sector_entropy({2, 1}, MixParam{0.5}) ==
        doctest::Approx(h2).epsilon(1e-14));
}

TEST_CASE("coherent information against the dense oracle") {
  const int n = 4, l = 2;
  const double p = 0.8;
  const oracle::WeightBasis basis(n, l);
  const auto eig =
      oracle::eigenvalues(oracle::build_rho_sector(basis, MixParam{p}));
  const double trace = std::accumulate(eig.begin(), eig.end(), 0.0);
  double entropy = 0.0;
  for (double v : eig) {
    const double mu = v / trace;
    if (mu > 1e-15) entropy -= mu * std::log2(mu);
  }
  const double expected = std::log2(6.0) - entropy;
  CHECK(spectra::coherent_info({n, l}, MixParam{p}) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("coherent information bounds") {
  for (int l = 0; l <= 8; ++l) {
    const double cap =
        std::log2(static_cast<double>(SectorIndex{8, l}.dimension()));
    for (double p : {0.0, 0.4, 0.9, 1.0}) {
      const double ic = spectra::coherent_info({8, l}, MixParam{p});
      CHECK(ic >= 0.0);
      CHECK(ic <= cap + 1e-12);
    }
  }
  CHECK(spectra::coherent_info({6, 2}, MixParam{1.0}) ==
        doctest::Approx(std::log2(15.0)).epsilon(1e-14));
  CHECK(spectra::coherent_info({6, 2}, MixParam{0.0}) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("young and hahn agree on random sectors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ndist(1, 14);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ndist(rng);
    const int l = std::uniform_int_distribution<int>(0, n)(rng);
    const SectorIndex s{n, l};
    const int jm = s.j_max();
    const int k = std::uniform_int_distribution<int>(0, jm)(rng);
    const int j = std::uniform_int_distribution<int>(0, jm)(rng);
    CHECK(spectra::alpha_young(s, k, j) == spectra::alpha_hahn(s, k, j));
  }
}

TEST_CASE("eigenvalue tables are symmetric under l <-> n-l") {
  for (int n : {5, 8, 12}) {
    for (int l = 0; 2 * l <= n; ++l) {
      const auto a = spectra::adjacency_eig_table({n, l});
      const auto b = spectra::adjacency_eig_table({n, n - l});
      CHECK(a.values == b.values);
    }
  }
}

TEST_CASE("mix parameter validation") {
  CHECK(MixParam::from_q(1.0).p == 1.0);
  CHECK(MixParam::from_q(0.0).p == -1.0);
  CHECK(MixParam::from_q(0.5).p == 0.0);
  CHECK_THROWS_AS(MixParam::from_q(1.5), std::domain_error);
  CHECK_THROWS_AS(spectra::rho_spectrum({4, 2}, MixParam{1.5}),
                  std::domain_error);
}
