#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace permdist::rates {

/// Protocol inputs.  N = 2^k copies are shared initially; d = 2 selects the
/// qubit protocol, d > 2 the qudit ones (which ignore q and alpha).
struct ProtocolParams {
  double x = 1.0;      // weight of the entangled component of the input state
  double q = 1.0;      // mixing between the two entangled pure states
  double alpha = 0.5;  // Schmidt coefficient of those states
  int k = 1;           // N = 2^k
  int d = 2;           // local dimension
};

/// Group size measured at round i: n_i = 2^{k-i+1}.
int group_size(int k, int i);

/// Per-group expected rates as a function of the group size n.  These carry
/// the actual formulas; the round-indexed partial rates below wrap them.
double qubit_group_rate(int n, double q, double alpha);
double qudit_zero_group_rate(int n, int d);
double qudit_parity_group_rate(int n, int d);
double qudit_naive_group_rate(int n, int d);

/// Expected hashing rate of round i of the qubit protocol, 1 <= i <= k-1:
/// the binomial mixture over weight sectors of the sector coherent
/// information at p = 2q - 1.
double partial_rate_qubit(const ProtocolParams& par, int i);

/// Qudit protocol with zeros-vs-rest projectors, 1 <= i <= k.
double partial_rate_qudit_zero(const ProtocolParams& par, int i);

/// Qudit protocol with even-vs-odd projectors; d must be even.
double partial_rate_qudit_parity(const ProtocolParams& par, int i);

/// Qudit protocol measuring the full letter type.  Lower rate than the
/// zeros-vs-rest variant; kept for comparison sweeps.
double partial_rate_qudit_naive(const ProtocolParams& par, int i);

/// Schmidt rank n! / prod counts! of the post-measurement state of the
/// full-type measurement.  Requires sum counts == n.
std::int64_t schmidt_rank_multinomial(int n, std::span<const int> counts);

/// Total rate from partial rates.  partials.size() == k-1 selects the qubit
/// stopping rule (R_k = 0); size k selects the qudit one (R_{k+1} = 0).
/// Evaluated in the telescoped form and cross-checked against the expanded
/// form to 1e-12.
double total_rate(const ProtocolParams& par, std::span<const double> partials);

double total_rate_telescoped(const ProtocolParams& par,
                             std::span<const double> partials);
double total_rate_expanded(const ProtocolParams& par,
                           std::span<const double> partials);

enum class QuditVariant { zero, parity, naive };

struct RateResult {
  std::vector<double> partials;
  double total = 0.0;
};

RateResult qubit_protocol(const ProtocolParams& par);
RateResult qudit_protocol(const ProtocolParams& par, QuditVariant variant);

}  // namespace permdist::rates
