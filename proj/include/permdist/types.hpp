#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace permdist {

/// Projection sector of n qubits: the span of the computational basis
/// strings of Hamming weight l.  Irrep labels j attached to a sector run
/// over 0..min(l, n-l).
struct SectorIndex {
  int n = 0;
  int l = 0;

  int j_max() const { return std::min(l, n - l); }
  std::int64_t dimension() const;  // C(n, l)
};

/// Purity parameter p of the single-qubit mixture p|+><+| + (1-p) I/2,
/// with |p| <= 1.  A mixing probability q maps to p = 2q - 1.
struct MixParam {
  double p = 0.0;

  static MixParam from_q(double q);
};

/// Eigenvalues with exact multiplicities of a (subnormalized) sector matrix.
/// Zero eigenvalues are kept so that the dimension and trace identities stay
/// exact.
struct Spectrum {
  struct Entry {
    double value = 0.0;
    std::int64_t multiplicity = 0;
  };
  std::vector<Entry> entries;  // indexed by irrep label j
  double trace = 0.0;          // sum of multiplicity * value
};

/// Throws std::domain_error unless 0 <= l <= n and n >= 1.
void validate_sector(const SectorIndex& s);

}  // namespace permdist
