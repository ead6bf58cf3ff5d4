#include "permdist/spectra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "permdist/combinatorics.hpp"

namespace permdist::spectra {

namespace {

// Alternating binomial sums are evaluated in 128-bit arithmetic; with the
// cache capped at n <= 40 no partial sum can overflow.
constexpr int kClosedFormMaxN = 40;

void validate_alpha_args(const SectorIndex& s, int k, int j) {
  validate_sector(s);
  if (s.n > kClosedFormMaxN) {
    throw std::domain_error("alpha: closed forms are limited to n <= " +
                            std::to_string(kClosedFormMaxN));
  }
  const int jm = s.j_max();
  if (k < 0 || k > jm || j < 0 || j > jm) {
    throw std::domain_error("alpha: k and j must lie in [0, min(l, n-l)]");
  }
}

std::int64_t narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string(what) + ": value exceeds int64");
  }
  return static_cast<std::int64_t>(v);
}

__int128 eberlein_sum(int n, int l, int k, int j, bool middle_uses_r) {
  const auto& C = BinomialCache::shared();
  __int128 acc = 0;
  for (int r = 0; r <= k; ++r) {
    const int sign = ((k - r) % 2 == 0) ? 1 : -1;
    const std::int64_t mid = middle_uses_r ? C.binom(l - j, r)
                                           : C.binom(l - j, k - r);
    acc += static_cast<__int128>(sign) * C.binom(l - r, k - r) * mid *
           C.binom(n - l - j + r, r);
  }
  return acc;
}

}  // namespace

std::int64_t alpha_young(SectorIndex sector, int k, int j) {
  validate_alpha_args(sector, k, j);
  const auto& C = BinomialCache::shared();
  const int n = sector.n, l = sector.l;
  const int r_lo = std::max(0, k - j);
  const int r_hi = std::min(k, l - j);
  __int128 acc = 0;
  for (int r = r_lo; r <= r_hi; ++r) {
    const int sign = ((k - r) % 2 == 0) ? 1 : -1;
    acc += static_cast<__int128>(sign) * C.binom(l - j + k - r, k) *
           C.binom(n - l - k + r, r) * C.binom(j, k - r);
  }
  return narrow(acc, "alpha_young");
}

std::int64_t alpha_hahn(SectorIndex sector, int k, int j) {
  validate_alpha_args(sector, k, j);
  const int n = sector.n;
  const int l = std::min(sector.l, n - sector.l);
  return narrow(eberlein_sum(n, l, k, j, /*middle_uses_r=*/true), "alpha_hahn");
}

std::int64_t alpha_hahn_alt(SectorIndex sector, int k, int j) {
  validate_alpha_args(sector, k, j);
  const int n = sector.n;
  const int l = std::min(sector.l, n - sector.l);
  return narrow(eberlein_sum(n, l, k, j, /*middle_uses_r=*/false),
                "alpha_hahn_alt");
}

AdjacencyEigTable adjacency_eig_table(SectorIndex sector) {
  validate_sector(sector);
  const int jm = sector.j_max();
  AdjacencyEigTable table;
  table.sector = sector;
  table.values.assign(jm + 1, std::vector<std::int64_t>(jm + 1, 0));
  for (int k = 0; k <= jm; ++k) {
    for (int j = 0; j <= jm; ++j) {
      table.values[k][j] = alpha_young(sector, k, j);
    }
  }
  return table;
}

std::int64_t multiplicity(int n, int j) {
  if (n < 1 || j < 0 || 2 * j > n) {
    throw std::domain_error("multiplicity: need 0 <= 2j <= n, got n=" +
                            std::to_string(n) + " j=" + std::to_string(j));
  }
  const auto& C = BinomialCache::shared();
  const __int128 num = static_cast<__int128>(C.binom(n, j)) * (n - 2 * j + 1);
  const int den = n - j + 1;
  if (num % den != 0) {
    throw std::logic_error("multiplicity: C(n,j)(n-2j+1) not divisible");
  }
  return narrow(num / den, "multiplicity");
}

Spectrum rho_spectrum(SectorIndex sector, MixParam mix) {
  validate_sector(sector);
  if (std::abs(mix.p) > 1.0) {
    throw std::domain_error("rho_spectrum: |p| must not exceed 1");
  }
  const int jm = sector.j_max();
  const double scale = std::ldexp(1.0, -sector.n);  // 2^{-n}
  const double p2 = mix.p * mix.p;

  std::vector<double> p_pow(jm + 1);
  p_pow[0] = 1.0;
  for (int k = 1; k <= jm; ++k) p_pow[k] = p_pow[k - 1] * p2;

  const AdjacencyEigTable table = adjacency_eig_table(sector);
  Spectrum spec;
  spec.entries.resize(jm + 1);
  for (int j = 0; j <= jm; ++j) {
    double acc = 0.0;
    for (int k = jm; k >= 0; --k) {
      acc += p_pow[k] * static_cast<double>(table.values[k][j]);
    }
    spec.entries[j].value = scale * acc;
    spec.entries[j].multiplicity = multiplicity(sector.n, j);
    spec.trace += spec.entries[j].value *
                  static_cast<double>(spec.entries[j].multiplicity);
  }
  return spec;
}

double spectral_radius(SectorIndex sector, MixParam mix) {
  validate_sector(sector);
  if (std::abs(mix.p) > 1.0) {
    throw std::domain_error("spectral_radius: |p| must not exceed 1");
  }
  const auto& C = BinomialCache::shared();
  const int n = sector.n, l = sector.l;
  const double p2 = mix.p * mix.p;
  double acc = 0.0, pk = 1.0;
  for (int k = 0; k <= sector.j_max(); ++k) {
    acc += pk * static_cast<double>(C.binom(n - l, k) * C.binom(l, k));
    pk *= p2;
  }
  return std::ldexp(acc, -n);
}

double sector_entropy(SectorIndex sector, MixParam mix) {
  const Spectrum spec = rho_spectrum(sector, mix);
  double s = 0.0;
  for (const auto& e : spec.entries) {
    const double mu = e.value / spec.trace;
    if (mu <= 0.0) continue;
    s -= static_cast<double>(e.multiplicity) * mu * std::log2(mu);
  }
  return s < 0.0 ? 0.0 : s;
}

double coherent_info(SectorIndex sector, MixParam mix) {
  const double dim_log = std::log2(static_cast<double>(sector.dimension()));
  const double ic = dim_log - sector_entropy(sector, mix);
  return ic < 0.0 ? 0.0 : ic;
}

}  // namespace permdist::spectra
