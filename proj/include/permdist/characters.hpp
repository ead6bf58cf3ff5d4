#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permdist/combinatorics.hpp"

namespace permdist::characters {

/// Conjugacy classes of S_n, one per cycle type, in a fixed deterministic
/// order (partitions of n enumerated largest-part-first).
std::vector<CycleClass> conjugacy_classes(int n);

/// |class| = n! / prod_k (k^{i_k} i_k!), exact.  Requires n <= 20.
std::int64_t class_size(const CycleClass& cls);

/// Character of the permutation representation on weight-l strings: the
/// number of such strings fixed by any permutation of the class.  Evaluated
/// as the capped-composition sum over cycle selections.
std::int64_t perm_character(int n, int l, const CycleClass& cls);

/// Character of the two-row irrep (n-j, j), 0 <= 2j <= n, as the Frobenius
/// difference of the composition sums at targets j and j-1.
std::int64_t irrep_character(int n, int j, const CycleClass& cls);

/// A concrete permutation (image table) with the given cycle type.
std::vector<int> representative(const CycleClass& cls);

/// Number of weight-l strings fixed by perm (an image table); brute force.
std::int64_t count_fixed_weight_strings(const std::vector<int>& perm, int l);

struct CharacterTableSlice {
  int n = 0;
  std::vector<CycleClass> classes;
  std::vector<std::int64_t> sizes;
  std::vector<std::vector<std::int64_t>> h_rows;  // chi^{H_l}, l = 0..n
  std::vector<std::vector<std::int64_t>> b_rows;  // chi^{B_j}, j = 0..n/2
};

CharacterTableSlice build_character_table(int n);

struct DecompositionReport {
  bool pass = true;
  int classes_checked = 0;
  std::vector<std::string> failures;
};

/// Executable decomposition theorem: chi^{H_l} = sum_{j<=l} chi^{B_j} on
/// every class for l <= n/2, chi on the identity equals the dimension, and
/// the chi^{B_j} are orthonormal under the class-size inner product
/// (sum_cls |cls| chi_a chi_b = n! delta_ab).  Failures are reported, not
/// thrown.
DecompositionReport verify_decomposition(int n);

}  // namespace permdist::characters
