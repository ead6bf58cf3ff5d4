#include "permdist/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "permdist/combinatorics.hpp"
#include "permdist/spectra.hpp"

namespace permdist::rates {

namespace {

constexpr double kLog2E = 1.0 / std::numbers::ln2;

void validate_params(const ProtocolParams& par) {
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in01(par.x) || !in01(par.q) || !in01(par.alpha)) {
    throw std::domain_error("protocol params x, q, alpha must lie in [0, 1]");
  }
  if (par.k < 1) throw std::domain_error("protocol params: k >= 1 required");
  if (par.d < 2) throw std::domain_error("protocol params: d >= 2 required");
}

void validate_round(const ProtocolParams& par, int i, bool qudit) {
  const int hi = qudit ? par.k : par.k - 1;
  if (i < 1 || i > hi) {
    throw std::domain_error("round index i = " + std::to_string(i) +
                            " outside [1, " + std::to_string(hi) + "]");
  }
}

// x^(2^e) by repeated squaring; exact at x in {0, 1}.
double pow_pow2(double x, int e) {
  double r = x;
  for (int t = 0; t < e; ++t) r *= r;
  return r;
}

double log2_binom(int n, int l) { return log_binom(n, l) * kLog2E; }

}  // namespace

int group_size(int k, int i) {
  if (k < 1 || i < 1 || i > k + 1) {
    throw std::domain_error("group_size: need 1 <= i <= k+1");
  }
  return 1 << (k - i + 1);
}

double qubit_group_rate(int n, double q, double alpha) {
  if (n < 1) throw std::domain_error("qubit_group_rate: n >= 1 required");
  const MixParam mix = MixParam::from_q(q);
  const auto& C = BinomialCache::shared();
  double rate = 0.0;
  for (int l = 0; l <= n; ++l) {
    const double weight = std::pow(alpha, l) * std::pow(1.0 - alpha, n - l) *
                          static_cast<double>(C.binom(n, l));
    if (weight == 0.0) continue;
    rate += weight * spectra::coherent_info({n, l}, mix);
  }
  return rate;
}

double qudit_zero_group_rate(int n, int d) {
  if (n < 1 || d < 2) throw std::domain_error("qudit_zero_group_rate: bad args");
  // Schmidt rank r_l = C(n,l) (d-1)^{n-l}; the ranks sum to d^n, so
  // r_l / d^n is a probability distribution.  Log domain keeps large n and
  // d from overflowing.
  const double log2_dm1 = (d == 2) ? 0.0 : std::log2(static_cast<double>(d - 1));
  const double log2_d = std::log2(static_cast<double>(d));
  double rate = 0.0;
  for (int l = 0; l <= n; ++l) {
    const double log2_rank = log2_binom(n, l) + (n - l) * log2_dm1;
    rate += std::exp2(log2_rank - n * log2_d) * log2_rank;
  }
  return rate;
}

double qudit_parity_group_rate(int n, int d) {
  if (n < 1 || d < 2) {
    throw std::domain_error("qudit_parity_group_rate: bad args");
  }
  if (d % 2 != 0) {
    throw std::domain_error("parity protocol requires even d, got " +
                            std::to_string(d));
  }
  // r_l = C(n,l) (d/2)^l (d/2)^{n-l} = C(n,l) (d/2)^n.
  const double log2_d = std::log2(static_cast<double>(d));
  const double log2_half_d_n = n * std::log2(d / 2.0);
  double rate = 0.0;
  for (int l = 0; l <= n; ++l) {
    const double log2_rank = log2_binom(n, l) + log2_half_d_n;
    rate += std::exp2(log2_rank - n * log2_d) * log2_rank;
  }
  return rate;
}

namespace {

// Recursion over compositions (l_0..l_{d-1}) of n; the log2-multinomial is
// extended one binomial factor per level.
void naive_walk(int d, int pos, int remaining, int placed, double log2_multi,
                double& acc) {
  if (pos == d - 1) {
    const double full = log2_multi + log2_binom(placed + remaining, remaining);
    acc += std::exp2(full) * full;
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    naive_walk(d, pos + 1, remaining - v, placed + v,
               log2_multi + log2_binom(placed + v, v), acc);
  }
}

}  // namespace

double qudit_naive_group_rate(int n, int d) {
  if (n < 1 || d < 2) {
    throw std::domain_error("qudit_naive_group_rate: bad args");
  }
  double acc = 0.0;
  naive_walk(d, 0, n, 0, 0.0, acc);
  return acc * std::exp2(-n * std::log2(static_cast<double>(d)));
}

double partial_rate_qubit(const ProtocolParams& par, int i) {
  validate_params(par);
  validate_round(par, i, false);
  return qubit_group_rate(group_size(par.k, i), par.q, par.alpha);
}

double partial_rate_qudit_zero(const ProtocolParams& par, int i) {
  validate_params(par);
  validate_round(par, i, true);
  return qudit_zero_group_rate(group_size(par.k, i), par.d);
}

double partial_rate_qudit_parity(const ProtocolParams& par, int i) {
  validate_params(par);
  validate_round(par, i, true);
  return qudit_parity_group_rate(group_size(par.k, i), par.d);
}

double partial_rate_qudit_naive(const ProtocolParams& par, int i) {
  validate_params(par);
  validate_round(par, i, true);
  return qudit_naive_group_rate(group_size(par.k, i), par.d);
}

std::int64_t schmidt_rank_multinomial(int n, std::span<const int> counts) {
  long long total = 0;
  for (int c : counts) total += c;
  if (total != n) {
    throw std::domain_error("schmidt_rank_multinomial: counts sum to " +
                            std::to_string(total) + ", expected " +
                            std::to_string(n));
  }
  return BinomialCache::shared().multinomial(counts);
}

double total_rate_telescoped(const ProtocolParams& par,
                             std::span<const double> partials) {
  validate_params(par);
  const int k = par.k;
  const std::size_t len = partials.size();
  if (len != static_cast<std::size_t>(k - 1) &&
      len != static_cast<std::size_t>(k)) {
    throw std::invalid_argument(
        "total_rate: expected k-1 (qubit) or k (qudit) partial rates, got " +
        std::to_string(len) + " for k = " + std::to_string(k));
  }
  auto partial = [&](int i) {
    return (i >= 1 && i <= static_cast<int>(len)) ? partials[i - 1] : 0.0;
  };
  double sum = 0.0;
  for (int i = 1; i <= static_cast<int>(len); ++i) {
    const double xn = pow_pow2(par.x, k - i + 1);  // x^{2^{k-i+1}}
    sum += xn * (std::ldexp(partial(i), i - 1) - std::ldexp(partial(i + 1), i));
  }
  return std::ldexp(sum, -k);
}

double total_rate_expanded(const ProtocolParams& par,
                           std::span<const double> partials) {
  validate_params(par);
  const int k = par.k;
  const std::size_t len = partials.size();
  if (len != static_cast<std::size_t>(k - 1) &&
      len != static_cast<std::size_t>(k)) {
    throw std::invalid_argument(
        "total_rate: expected k-1 (qubit) or k (qudit) partial rates, got " +
        std::to_string(len) + " for k = " + std::to_string(k));
  }
  if (len == 0) return 0.0;
  double sum = pow_pow2(par.x, k) * partials[0];
  for (int i = 2; i <= static_cast<int>(len); ++i) {
    const double xn = pow_pow2(par.x, k - i + 1);
    sum += std::ldexp((1.0 - xn) * xn * partials[i - 1], i - 1);
  }
  return std::ldexp(sum, -k);
}

double total_rate(const ProtocolParams& par, std::span<const double> partials) {
  const double tel = total_rate_telescoped(par, partials);
  const double expanded = total_rate_expanded(par, partials);
  if (std::abs(tel - expanded) > 1e-12 * std::max(1.0, std::abs(tel))) {
    throw std::logic_error("total_rate: telescoped and expanded forms differ "
                           "by " + std::to_string(std::abs(tel - expanded)));
  }
  return tel;
}

RateResult qubit_protocol(const ProtocolParams& par) {
  validate_params(par);
  RateResult res;
  for (int i = 1; i <= par.k - 1; ++i) {
    res.partials.push_back(partial_rate_qubit(par, i));
  }
  res.total = total_rate(par, res.partials);
  return res;
}

RateResult qudit_protocol(const ProtocolParams& par, QuditVariant variant) {
  validate_params(par);
  RateResult res;
  for (int i = 1; i <= par.k; ++i) {
    switch (variant) {
      case QuditVariant::zero:
        res.partials.push_back(partial_rate_qudit_zero(par, i));
        break;
      case QuditVariant::parity:
        res.partials.push_back(partial_rate_qudit_parity(par, i));
        break;
      case QuditVariant::naive:
        res.partials.push_back(partial_rate_qudit_naive(par, i));
        break;
    }
  }
  res.total = total_rate(par, res.partials);
  return res;
}

}  // namespace permdist::rates
