#pragma once

#include <cstdint>
#include <vector>

#include "permdist/types.hpp"

namespace permdist::oracle {

/// All C(n,l) weight-l bit-strings of length n, in lexicographic order.
/// A string is packed into an integer with its leftmost character in the
/// highest of the n low bits, so lexicographic order on strings is numeric
/// order on the packed values.  Hamming distances come from popcount.
class WeightBasis {
public:
  WeightBasis(int n, int l);

  int n() const { return n_; }
  int l() const { return l_; }
  int size() const { return static_cast<int>(strings_.size()); }
  std::uint32_t string_at(int idx) const { return strings_[idx]; }
  const std::vector<std::uint32_t>& strings() const { return strings_; }
  bool contains(std::uint32_t x) const;

  static int hamming(std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a ^ b);
  }

private:
  int n_, l_;
  std::vector<std::uint32_t> strings_;
};

struct DenseSymMatrix {
  int dim = 0;
  std::vector<double> a;  // row-major, dim*dim

  static DenseSymMatrix zero(int dim);
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  double at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
  double frobenius() const;
};

struct DenseIntMatrix {
  int dim = 0;
  std::vector<std::int64_t> a;

  static DenseIntMatrix zero(int dim);
  std::int64_t& at(int r, int c) {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
  std::int64_t at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
};

DenseSymMatrix to_double(const DenseIntMatrix& m);

/// 0/1 adjacency matrix of the Hamming-distance-2k relation on the basis.
/// k = 0 gives the identity.
DenseIntMatrix build_adjacency(const WeightBasis& basis, int k);

/// Weight-l compression of the n-fold product of p|+><+| + (1-p) I/2,
/// built two independent ways: per entry as p^{d(x,y)} / 2^n, and as the
/// p^{2k}-weighted sum of the adjacency matrices.  The two constructions are
/// compared entrywise to 1e-15 and the direct version is returned; any
/// disagreement throws.
DenseSymMatrix build_rho_sector(const WeightBasis& basis, MixParam mix);

/// Eigenvalues in ascending order via cyclic Jacobi rotations.  Throws
/// std::runtime_error if the off-diagonal norm has not collapsed after
/// max_sweeps sweeps.
std::vector<double> eigenvalues(DenseSymMatrix m, int max_sweeps = 100);

struct EigenSystem {
  int dim = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row i (length dim) pairs with values[i]
};

EigenSystem eigensystem(DenseSymMatrix m, int max_sweeps = 100);

/// Intersection numbers p_ij^k of the sector's association scheme,
/// 0 <= i,j,k <= classes.
struct IntersectionNumbers {
  int classes = 0;
  std::vector<std::int64_t> p;

  std::int64_t at(int i, int j, int k) const {
    const int d = classes + 1;
    return p[(static_cast<std::size_t>(i) * d + j) * d + k];
  }
  std::int64_t& at(int i, int j, int k) {
    const int d = classes + 1;
    return p[(static_cast<std::size_t>(i) * d + j) * d + k];
  }
};

/// Verifies, in exact integer arithmetic, that the distance relations on
/// the weight-l basis form a symmetric commutative association scheme:
/// A_0 = I, sum_k A_k = J, every A_k symmetric, every product A_i A_j a
/// nonnegative-integer combination of the A_k, and A_i A_j = A_j A_i.
/// Returns the extracted intersection numbers; throws with the violated
/// axiom and an (i,j,k) witness otherwise.
IntersectionNumbers verify_cas_axioms(const WeightBasis& basis);

/// |{y in basis : d(x,y) = 2k}|.  Equals C(n-l,k) * C(l,k) for every x.
std::int64_t count_distance_pairs(const WeightBasis& basis, std::uint32_t x,
                                  int k);

/// Exhaustively counts the weight-l vectors at Hamming distance 2k from
/// 0^{n-l} 1^l having exactly m ones among the first n-j positions, and
/// checks the count against the closed form C(n-l,k) C(l-j,m-k) C(j,l-m).
/// Returns the count; throws on mismatch.
std::int64_t verify_young_counting(int n, int l, int j, int k, int m);

}  // namespace permdist::oracle
