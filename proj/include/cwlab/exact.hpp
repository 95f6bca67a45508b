#ifndef CWLAB_EXACT_HPP
#define CWLAB_EXACT_HPP

#include <cstdint>
#include <vector>

#include "cwlab/core.hpp"

namespace cwlab {

// Exact law of S_N = X_1 + ... + X_N under CW(beta, N).
//
// Support point k = 0..N corresponds to s = 2k - N (k spins up). Weights are
// kept in log space: log_weight(k) = ln C(N,k) + beta s^2 / (2N), and the
// partition function is their log-sum-exp. Immutable after construction.
class MagnetizationPmf {
 public:
  explicit MagnetizationPmf(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  std::int64_t size() const { return static_cast<std::int64_t>(log_weights_.size()); }

  std::int64_t support(std::int64_t k) const { return 2 * k - params_.n; }
  std::vector<std::int64_t> support_points() const;

  double log_weight(std::int64_t k) const { return log_weights_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& log_weights() const { return log_weights_; }
  double log_partition() const { return log_partition_; }

  // Probability of the k-th support point.
  double probability(std::int64_t k) const;
  // P(S_N = s); 0 off the support.
  double pmf(std::int64_t s) const;
  std::vector<double> probabilities() const;

 private:
  ModelParams params_;
  std::vector<double> log_weights_;
  double log_max_;      // largest log weight
  double scaled_sum_;   // sum_k exp(log_weight(k) - log_max_)
  double log_partition_;
};

MagnetizationPmf magnetization_pmf(const ModelParams& params);

// E[X_1 ... X_ell], exact, O(ell N). Throws ArgumentError if ell > n.
//
// Reduces to the magnetization: E = sum_s P(S=s) g_ell(s) with
// g_ell(s) = E[X_1 ... X_ell | S = s], which obeys
//   s g_ell = ell g_{ell-1} + (N - ell) g_{ell+1},  g_0 = 1, g_1 = s/N.
double exact_correlation(const ModelParams& params, std::int64_t ell);
double exact_correlation(const MagnetizationPmf& pmf, std::int64_t ell);

// Same quantity as the explicit double sum over j = up-spins among the first
// ell and k = up-spins among the rest:
//   sum_{j,k} (-1)^{ell-j} C(ell,j) C(N-ell,k) e^{beta s^2/2N} / Z,
// accumulated in sign-aware log space. Loses accuracy to cancellation for
// large N and ell; kept as an independent second route.
double exact_correlation_double_sum(const ModelParams& params, std::int64_t ell);

// E[(S_N / N^alpha)^K].
double exact_scaled_moment(const ModelParams& params, int big_k, double alpha);
double exact_scaled_moment(const MagnetizationPmf& pmf, int big_k, double alpha);

// 2^N enumeration oracles (n <= 20, RefusalError otherwise).
double brute_force_correlation(const ModelParams& params, std::int64_t ell);
double brute_force_scaled_moment(const ModelParams& params, int big_k, double alpha);

}  // namespace cwlab

#endif  // CWLAB_EXACT_HPP
