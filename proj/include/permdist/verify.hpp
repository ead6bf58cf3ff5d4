#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "permdist/spectra.hpp"

namespace permdist::verify {

struct CheckResult {
  std::string name;
  std::string scope;
  bool pass = true;
  double residual = 0.0;  // largest numeric residual seen (0 for exact checks)
  std::string witness;    // first failure location, or notes when passing
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

struct Options {
  int max_n = 12;
  std::vector<std::string> sections;  // subset of {spectra,cas,characters,rates}; empty = all
  int jobs = 2;
};

/// Runs the selected check batteries.  When progress is non-null, one line
/// per finished check is streamed to it.
VerificationReport run(const Options& opt, std::ostream* progress = nullptr);

/// JSON serialization (name/scope/status/residual/witness per check plus an
/// overall flag).
std::string to_json(const VerificationReport& rep);

// ---- spectra section ----
CheckResult check_formula_equivalence(int max_n);
CheckResult check_eberlein_arbitration(int max_n);
CheckResult check_adjacency_tables_vs_oracle(int max_n);
CheckResult check_multiplicity_identity(int max_n);
CheckResult check_completeness(int max_n);
CheckResult check_special_cases(int max_n);
CheckResult check_entropy_monotonicity(int max_n);
CheckResult check_sector_symmetry(int max_n);
CheckResult check_dual_construction(int max_n);
CheckResult check_distance_counts(int max_n);
CheckResult check_young_counting(int max_n);
CheckResult check_oracle_spectrum_match(int max_n, int jobs);
CheckResult check_eigenspace_dimensions(int max_n, int jobs);

// ---- cas section ----
CheckResult check_cas_axioms(int max_n);

// ---- characters section ----
CheckResult check_character_decomposition(int max_n);
CheckResult check_character_fixed_points(int max_n);
CheckResult check_character_examples(int max_n);
CheckResult check_character_dimensions(int max_n);
CheckResult check_total_space_decomposition(int max_n);

// ---- rates section ----
CheckResult check_rate_telescoping();
CheckResult check_rate_degeneracies();
CheckResult check_rate_symmetries();
CheckResult check_qudit_dominance();
CheckResult check_rate_monotonicity_in_copies();
CheckResult check_rate_oracle_cross_check();
CheckResult check_figure_properties(int jobs);

/// Exact comparison of two eigenvalue tables; the building block of the
/// formula-equivalence checks, exposed so the harness itself can be
/// mutation-tested with a corrupted table.
CheckResult compare_alpha_tables(const std::string& name,
                                 const spectra::AdjacencyEigTable& a,
                                 const spectra::AdjacencyEigTable& b);

}  // namespace permdist::verify
