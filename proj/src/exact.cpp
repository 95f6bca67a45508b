#include "cwlab/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cwlab/errors.hpp"
#include "cwlab/log_math.hpp"

namespace cwlab {

namespace {

constexpr std::int64_t kBruteForceMaxN = 20;

double energy_term(double beta, std::int64_t s, std::int64_t n) {
  const double sd = static_cast<double>(s);
  return beta * sd * sd / (2.0 * static_cast<double>(n));
}

}  // namespace

MagnetizationPmf::MagnetizationPmf(const ModelParams& params)
    : params_(params), log_weights_(static_cast<std::size_t>(params.n) + 1) {
  const auto lf = LogFactorials::at_least(params.n);
  for (std::int64_t k = 0; k <= params.n; ++k) {
    log_weights_[static_cast<std::size_t>(k)] =
        lf->log_binomial(params.n, k) + energy_term(params.beta, 2 * k - params.n, params.n);
  }
  // Probabilities are taken relative to the largest weight: ln Z itself is of
  // order N and carries an absolute rounding error that would rescale them.
  log_max_ = *std::max_element(log_weights_.begin(), log_weights_.end());
  scaled_sum_ = 0.0;
  for (double lw : log_weights_) scaled_sum_ += std::exp(lw - log_max_);
  log_partition_ = log_max_ + std::log(scaled_sum_);
}

std::vector<std::int64_t> MagnetizationPmf::support_points() const {
  std::vector<std::int64_t> out(log_weights_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = support(static_cast<std::int64_t>(k));
  return out;
}

double MagnetizationPmf::probability(std::int64_t k) const {
  return std::exp(log_weights_[static_cast<std::size_t>(k)] - log_max_) / scaled_sum_;
}

double MagnetizationPmf::pmf(std::int64_t s) const {
  const std::int64_t n = params_.n;
  if (s < -n || s > n || ((s + n) % 2) != 0) return 0.0;
  return probability((s + n) / 2);
}

std::vector<double> MagnetizationPmf::probabilities() const {
  std::vector<double> out(log_weights_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(log_weights_[k] - log_max_) / scaled_sum_;
  return out;
}

MagnetizationPmf magnetization_pmf(const ModelParams& params) { return MagnetizationPmf(params); }

double exact_correlation(const MagnetizationPmf& pmf, std::int64_t ell) {
  const std::int64_t n = pmf.params().n;
  if (ell < 0 || ell > n) throw ArgumentError("correlation order must satisfy 0 <= ell <= n");
  if (ell == 0) return 1.0;
  if (ell % 2 != 0) return 0.0;
  const double nd = static_cast<double>(n);
  // Pair s with -s: g_ell is even in s for even ell.
  double sum = 0.0;
  for (std::int64_t k = 0; 2 * k <= n; ++k) {
    const double s = static_cast<double>(pmf.support(n - k));
    double prev = 1.0;
    double cur = s / nd;
    for (std::int64_t j = 1; j < ell; ++j) {
      const double next = (s * cur - static_cast<double>(j) * prev) / (nd - static_cast<double>(j));
      prev = cur;
      cur = next;
    }
    sum += (2 * k == n ? 1.0 : 2.0) * pmf.probability(k) * cur;
  }
  return sum;
}

double exact_correlation(const ModelParams& params, std::int64_t ell) {
  if (ell < 0 || ell > params.n) throw ArgumentError("correlation order must satisfy 0 <= ell <= n");
  if (ell == 0) return 1.0;
  if (ell % 2 != 0) return 0.0;
  return exact_correlation(MagnetizationPmf(params), ell);
}

double exact_correlation_double_sum(const ModelParams& params, std::int64_t ell) {
  const std::int64_t n = params.n;
  if (ell < 0 || ell > n) throw ArgumentError("correlation order must satisfy 0 <= ell <= n");
  if (ell == 0) return 1.0;

  const auto lf = LogFactorials::at_least(n);
  LogAccumulator partition;
  double shift = kNegInf;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double lw = lf->log_binomial(n, k) + energy_term(params.beta, 2 * k - n, n);
    partition.add(lw);
    shift = std::max(shift, lw);
  }

  // j = spins up among the first ell, k = spins up among the other n - ell.
  SignedLogAccumulator acc;
  for (std::int64_t j = 0; j <= ell; ++j) {
    const double lj = lf->log_binomial(ell, j);
    const bool negative = ((ell - j) % 2) != 0;
    for (std::int64_t k = 0; k <= n - ell; ++k) {
      const std::int64_t s = 2 * (j + k) - n;
      acc.add(lj + lf->log_binomial(n - ell, k) + energy_term(params.beta, s, n), negative);
    }
  }
  return acc.value(shift) / partition.scaled(shift);
}

double exact_scaled_moment(const MagnetizationPmf& pmf, int big_k, double alpha) {
  if (big_k < 0) throw ArgumentError("moment order must be non-negative");
  if (big_k == 0) return 1.0;
  const std::int64_t n = pmf.params().n;
  const double scale = std::pow(static_cast<double>(n), -alpha);
  // Pair s with -s so odd moments cancel exactly.
  double sum = 0.0;
  for (std::int64_t k = 0; 2 * k < n; ++k) {
    const double x = std::pow(static_cast<double>(pmf.support(n - k)) * scale, big_k);
    const double pair = (big_k % 2 == 0) ? 2.0 * x : 0.0;
    sum += pmf.probability(k) * pair;
  }
  // For even n the midpoint s = 0 contributes nothing when K > 0.
  return sum;
}

double exact_scaled_moment(const ModelParams& params, int big_k, double alpha) {
  return exact_scaled_moment(MagnetizationPmf(params), big_k, alpha);
}

namespace {

template <typename Fn>
void for_each_configuration(std::int64_t n, Fn&& fn) {
  if (n > kBruteForceMaxN) throw RefusalError("2^N enumeration refused for n > 20");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) fn(mask);
}

// Spin i is +1 when bit i of mask is set.
std::int64_t magnetization_of(std::uint64_t mask, std::int64_t n) {
  return 2 * static_cast<std::int64_t>(std::popcount(mask)) - n;
}

}  // namespace

double brute_force_correlation(const ModelParams& params, std::int64_t ell) {
  const std::int64_t n = params.n;
  if (ell < 0 || ell > n) throw ArgumentError("correlation order must satisfy 0 <= ell <= n");
  const std::uint64_t prefix = ell == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ell) - 1;
  double z = 0.0;
  double num = 0.0;
  for_each_configuration(n, [&](std::uint64_t mask) {
    const double w = std::exp(energy_term(params.beta, magnetization_of(mask, n), n));
    const int down = static_cast<int>(ell) - std::popcount(mask & prefix);
    z += w;
    num += (down % 2 == 0 ? w : -w);
  });
  return num / z;
}

double brute_force_scaled_moment(const ModelParams& params, int big_k, double alpha) {
  const std::int64_t n = params.n;
  const double scale = std::pow(static_cast<double>(n), -alpha);
  double z = 0.0;
  double num = 0.0;
  for_each_configuration(n, [&](std::uint64_t mask) {
    const std::int64_t s = magnetization_of(mask, n);
    const double w = std::exp(energy_term(params.beta, s, n));
    z += w;
    num += w * std::pow(static_cast<double>(s) * scale, big_k);
  });
  return num / z;
}

}  // namespace cwlab
