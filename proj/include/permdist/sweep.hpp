#pragma once

#include <map>
#include <string>
#include <vector>

#include "permdist/rates.hpp"

namespace permdist::sweep {

/// One-dimensional parameter sweep of the qubit protocol.  `fixed` holds
/// the parameters that stay put (keys from {x, q, alpha, N}); `swept` names
/// the one that varies.  When N is swept, the grid is the powers of two in
/// [lo, hi] and `steps` is ignored.
struct SweepConfig {
  std::map<std::string, double> fixed;
  std::string swept = "q";
  double lo = 0.0;
  double hi = 1.0;
  int steps = 101;
  std::string output;  // CSV path; empty means stdout
};

struct Row {
  rates::ProtocolParams params;
  std::vector<double> partials;
  double total = 0.0;
};

/// Evaluates the grid (in parallel up to `jobs`), assembling rows in grid
/// order.  Throws on invalid configs; sanity-checks 0 <= R <= 1 per row.
std::vector<Row> run(const SweepConfig& cfg, int jobs);

/// Reference grids: five preset families of sweeps.
///   1: rate vs q for x in {0.8,0.6,0.4,0.2}   (N=16, alpha=1/2)
///   2: rate vs x for q in {0.1,0.2,0.3,0.4}   (N=16, alpha=1/2)
///   3: rate vs alpha                           (N=16, q=0.2, x=0.8)
///   4: rate vs q for N in {16,8,4,2}           (x=0.9, alpha=1/2)
///   5: rate vs x for N in {16,8,4,2}           (q=0.1, alpha=1/2)
std::vector<SweepConfig> figure_preset(int figure);

/// Flat key=value config file ('#' starts a comment).  Recognized keys:
/// swept, lo, hi, steps, x, q, alpha, N, output.  Unknown keys throw.
SweepConfig parse_config_file(const std::string& path);

/// Deterministic CSV for a family of sweeps: '#' comment lines echoing each
/// config, a header row, then x,q,alpha,N,rate rows in grid order.
std::string to_csv(const std::vector<SweepConfig>& configs,
                   const std::vector<std::vector<Row>>& results);

/// Grid value of the swept parameter at index t.
double grid_value(const SweepConfig& cfg, int t);
int grid_size(const SweepConfig& cfg);

}  // namespace permdist::sweep
