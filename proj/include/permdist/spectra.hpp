#pragma once

#include <cstdint>
#include <vector>

#include "permdist/types.hpp"

namespace permdist::spectra {

/// Eigenvalue table of the distance-2k adjacency operators A_k acting on a
/// weight-l sector.  values[k][j] with k, j in 0..min(l, n-l); entries are
/// exact integers.  Row k = 0 is all ones (A_0 is the identity), column
/// j = 0 carries the common row sums C(n-l,k) * C(l,k).
struct AdjacencyEigTable {
  SectorIndex sector;
  std::vector<std::vector<std::int64_t>> values;
};

/// alpha_k(j) from the Young-symmetrizer route: the alternating sum
///   sum_r (-1)^{k-r} C(l-j+k-r, k) C(n-l-k+r, r) C(j, k-r)
/// with r running from max(0, k-j) to min(k, l-j).  That range is the one
/// under which every binomial argument is nonnegative; it also matches the
/// change of variables m = l-j+k-r in the row-counting derivation.
std::int64_t alpha_young(SectorIndex sector, int k, int j);

/// alpha_k(j) as the Johnson-scheme eigenvalue, i.e. the Eberlein (dual
/// Hahn) polynomial
///   E_k(j) = sum_{r=0}^{k} (-1)^{k-r} C(l-r, k-r) C(l-j, r) C(n-l-j+r, r).
/// For l > n/2 the scheme is taken on complemented subsets (bit flips
/// preserve Hamming distance), so the formula is evaluated at l' = n-l.
/// Identical to alpha_young on every sector; the verification battery
/// arbitrates this against brute-force adjacency spectra.
std::int64_t alpha_hahn(SectorIndex sector, int k, int j);

/// A second convention for the Eberlein sum that circulates with the middle
/// binomial written C(l-j, k-r) instead of C(l-j, r).  It does NOT
/// reproduce the adjacency spectra; it is kept only so the verification
/// battery can document the arbitration between the two conventions.
std::int64_t alpha_hahn_alt(SectorIndex sector, int k, int j);

/// Full table of alpha_young values for one sector.
AdjacencyEigTable adjacency_eig_table(SectorIndex sector);

/// Dimension f_j = C(n,j) (n-2j+1)/(n-j+1) of the two-row irrep (n-j, j),
/// computed exactly; equals C(n,j) - C(n,j-1).  Requires 0 <= 2j <= n.
std::int64_t multiplicity(int n, int j);

/// Spectrum of the weight-l compression of the n-fold product of
/// p|+><+| + (1-p) I/2: eigenvalues
///   lambda_j = 2^{-n} sum_k p^{2k} alpha_k(j),  multiplicity f_j,
/// for j = 0..min(l, n-l).  The alpha sums are exact integers; only the
/// final assembly with p^{2k} is floating point.
Spectrum rho_spectrum(SectorIndex sector, MixParam mix);

/// Largest eigenvalue, 2^{-n} sum_k p^{2k} C(n-l,k) C(l,k).  Equals the
/// j = 0 entry of rho_spectrum, is strictly below 1, and is simple whenever
/// p != 0.
double spectral_radius(SectorIndex sector, MixParam mix);

/// von Neumann entropy in bits of the normalized sector state; zero
/// eigenvalues contribute nothing.  Lies in [0, log2 C(n,l)].
double sector_entropy(SectorIndex sector, MixParam mix);

/// log2 C(n,l) - sector_entropy: the one-way hashing rate achievable on the
/// post-measurement state of this sector.
double coherent_info(SectorIndex sector, MixParam mix);

}  // namespace permdist::spectra
