#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "permdist/combinatorics.hpp"
#include "permdist/oracle.hpp"

using namespace permdist;
using oracle::WeightBasis;

TEST_CASE("weight basis enumeration") {
  const WeightBasis basis(4, 2);
  CHECK(basis.size() == 6);
  for (int i = 1; i < basis.size(); ++i) {
    CHECK(basis.string_at(i - 1) < basis.string_at(i));
  }
  for (std::uint32_t x : basis.strings()) {
    CHECK(__builtin_popcount(x) == 2);
  }
  CHECK(WeightBasis(6, 0).size() == 1);
  CHECK(WeightBasis(6, 6).size() == 1);
  CHECK_THROWS_AS(WeightBasis(4, 5), std::domain_error);
}

TEST_CASE("adjacency matrices") {
  const WeightBasis basis(4, 2);
  SUBCASE("k = 0 is the identity") {
    const auto a0 = oracle::build_adjacency(basis, 0);
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        CHECK(a0.at(r, c) == (r == c ? 1 : 0));
      }
    }
  }
  SUBCASE("row sums are C(n-l,k) C(l,k)") {
    const auto& C = BinomialCache::shared();
    for (int k = 0; k <= 2; ++k) {
      const auto ak = oracle::build_adjacency(basis, k);
      for (int r = 0; r < 6; ++r) {
        std::int64_t sum = 0;
        for (int c = 0; c < 6; ++c) sum += ak.at(r, c);
        CHECK(sum == C.binom(2, k) * C.binom(2, k));
      }
    }
  }
  SUBCASE("relations partition the all-ones matrix") {
    std::vector<std::vector<std::int64_t>> total(6,
                                                 std::vector<std::int64_t>(6));
    for (int k = 0; k <= 2; ++k) {
      const auto ak = oracle::build_adjacency(basis, k);
      for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 6; ++c) total[r][c] += ak.at(r, c);
      }
    }
    for (const auto& row : total) {
      for (std::int64_t v : row) CHECK(v == 1);
    }
  }
}

TEST_CASE("sector matrix construction") {
  SUBCASE("two copies, weight one: circulant 2x2") {
    const WeightBasis basis(2, 1);
    for (double p : {0.2, 0.6, 1.0}) {
      const auto rho = oracle::build_rho_sector(basis, MixParam{p});
      CHECK(rho.at(0, 0) == 0.25);
      CHECK(rho.at(1, 1) == 0.25);
      CHECK(rho.at(0, 1) == doctest::Approx(p * p / 4.0).epsilon(1e-15));
      CHECK(rho.at(0, 1) == rho.at(1, 0));
    }
  }
  SUBCASE("p = 0 is a scaled identity") {
    const WeightBasis basis(5, 2);
    const auto rho = oracle::build_rho_sector(basis, MixParam{0.0});
    for (int r = 0; r < rho.dim; ++r) {
      for (int c = 0; c < rho.dim; ++c) {
        CHECK(rho.at(r, c) == (r == c ? std::ldexp(1.0, -5) : 0.0));
      }
    }
  }
  SUBCASE("trace is C(n,l)/2^n") {
    const WeightBasis basis(4, 2);
    const auto rho = oracle::build_rho_sector(basis, MixParam{0.7});
    double trace = 0.0;
    for (int r = 0; r < rho.dim; ++r) trace += rho.at(r, r);
    CHECK(trace == doctest::Approx(6.0 / 16.0).epsilon(1e-15));
  }
}

TEST_CASE("jacobi eigensolver") {
  SUBCASE("identity") {
    auto m = oracle::DenseSymMatrix::zero(5);
    for (int i = 0; i < 5; ++i) m.at(i, i) = 1.0;
    const auto eig = oracle::eigenvalues(std::move(m));
    for (double v : eig) CHECK(v == 1.0);
  }
  SUBCASE("analytic 2x2") {
    auto m = oracle::DenseSymMatrix::zero(2);
    const double p = 0.6;
    m.at(0, 0) = m.at(1, 1) = 0.25;
    m.at(0, 1) = m.at(1, 0) = p * p / 4.0;
    const auto eig = oracle::eigenvalues(std::move(m));
    CHECK(eig[0] == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(eig[1] == doctest::Approx(0.34).epsilon(1e-14));
  }
  SUBCASE("distance-one adjacency of the 6-dimensional sector") {
    const WeightBasis basis(4, 2);
    const auto eig = oracle::eigenvalues(
        oracle::to_double(oracle::build_adjacency(basis, 1)));
    const std::vector<double> expected = {-2, -2, 0, 0, 0, 4};
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(eig[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
  SUBCASE("random symmetric matrix: eigenpair residuals") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int dim = 40;
    auto m = oracle::DenseSymMatrix::zero(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = r; c < dim; ++c) {
        m.at(r, c) = m.at(c, r) = dist(rng);
      }
    }
    const auto original = m;
    const auto es = oracle::eigensystem(std::move(m));
    const double norm = original.frobenius();
    double trace = 0.0, eigsum = 0.0;
    for (int i = 0; i < dim; ++i) {
      trace += original.at(i, i);
      eigsum += es.values[i];
      double res2 = 0.0, vnorm2 = 0.0;
      for (int r = 0; r < dim; ++r) {
        double mv = 0.0;
        for (int c = 0; c < dim; ++c) {
          mv += original.at(r, c) * es.vectors[i * dim + c];
        }
        const double d = mv - es.values[i] * es.vectors[i * dim + r];
        res2 += d * d;
        vnorm2 += es.vectors[i * dim + r] * es.vectors[i * dim + r];
      }
      CHECK(std::sqrt(res2) <= 1e-9 * norm);
      CHECK(vnorm2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(eigsum == doctest::Approx(trace).epsilon(1e-12));
    CHECK(std::is_sorted(es.values.begin(), es.values.end()));
  }
  SUBCASE("sweep budget exhaustion throws") {
    auto m = oracle::DenseSymMatrix::zero(3);
    m.at(0, 1) = m.at(1, 0) = 1.0;
    m.at(1, 2) = m.at(2, 1) = 0.5;
    CHECK_THROWS_AS(oracle::eigenvalues(std::move(m), 0), std::runtime_error);
  }
}

TEST_CASE("association scheme axioms") {
  SUBCASE("johnson graph J(4,1) degree") {
    const WeightBasis basis(4, 1);
    const auto nums = oracle::verify_cas_axioms(basis);
    CHECK(nums.at(1, 1, 0) == 3);
  }
  SUBCASE("intersection numbers are symmetric in the lower pair") {
    const WeightBasis basis(8, 3);
    const auto nums = oracle::verify_cas_axioms(basis);
    for (int i = 0; i <= nums.classes; ++i) {
      for (int j = 0; j <= nums.classes; ++j) {
        for (int k = 0; k <= nums.classes; ++k) {
          CHECK(nums.at(i, j, k) == nums.at(j, i, k));
          CHECK(nums.at(i, j, k) >= 0);
        }
      }
    }
  }
  SUBCASE("first relation row of intersection numbers is a delta") {
    const WeightBasis basis(6, 2);
    const auto nums = oracle::verify_cas_axioms(basis);
    for (int j = 0; j <= nums.classes; ++j) {
      for (int k = 0; k <= nums.classes; ++k) {
        CHECK(nums.at(0, j, k) == (j == k ? 1 : 0));
      }
    }
  }
}

TEST_CASE("distance pair counts") {
  SUBCASE("spec fixtures") {
    const WeightBasis b42(4, 2);
    for (std::uint32_t x : b42.strings()) {
      CHECK(oracle::count_distance_pairs(b42, x, 0) == 1);
      CHECK(oracle::count_distance_pairs(b42, x, 1) == 4);
    }
    const WeightBasis b62(6, 2);
    for (std::uint32_t x : b62.strings()) {
      CHECK(oracle::count_distance_pairs(b62, x, 2) == 6);
    }
  }
  SUBCASE("x outside the basis throws") {
    const WeightBasis basis(4, 2);
    CHECK_THROWS_AS(oracle::count_distance_pairs(basis, 0b1111u, 1),
                    std::domain_error);
  }
}

TEST_CASE("young counting lemma") {
  CHECK(oracle::verify_young_counting(4, 2, 1, 1, 1) == 2);
  CHECK(oracle::verify_young_counting(6, 3, 2, 1, 2) == 6);
  // k = 0 leaves only x_0 itself; its first-row weight is l - j.
  for (int n : {4, 6}) {
    for (int l = 0; l <= n; ++l) {
      const int jm = std::min(l, n - l);
      for (int j = 0; j <= jm; ++j) {
        for (int m = 0; m <= l; ++m) {
          const auto count = oracle::verify_young_counting(n, l, j, 0, m);
          CHECK(count == (m == l - j ? 1 : 0));
        }
      }
    }
  }
  CHECK_THROWS_AS(oracle::verify_young_counting(4, 2, 3, 1, 1),
                  std::domain_error);
}
