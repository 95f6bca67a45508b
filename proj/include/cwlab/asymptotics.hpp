#ifndef CWLAB_ASYMPTOTICS_HPP
#define CWLAB_ASYMPTOTICS_HPP

#include <cstdint>
#include <functional>

#include "cwlab/core.hpp"

namespace cwlab {

// Integrand descriptor for the Laplace approximation of
//   int exp(-N F(t)) (t - t0)^ell phi(t) dt
// where F has a unique global minimum at t0 and its first non-vanishing
// derivative there has even order m_order with value fm_at_t0 > 0.
struct LaplaceProblem {
  std::function<double(double)> f;
  double t0 = 0.0;
  int m_order = 2;
  double fm_at_t0 = 1.0;
  std::function<double(double)> phi = [](double) { return 1.0; };

  // Throws ArgumentError when m_order is not a positive even number or
  // fm_at_t0 <= 0.
  void validate() const;
};

// Z_N(ell) = int exp(-N F_beta(t)) tanh^ell(t) dt. shift = min_t N F_beta(t)
// is removed before exponentiation, so ln Z_N(ell) = log_value - shift.
struct HsIntegral {
  ModelParams params;
  std::int64_t ell = 0;
  double log_value = 0.0;  // -inf when the signed integral vanishes (odd ell)
  double shift = 0.0;
};

// Global minimiser t >= 0 of F_beta: 0 for beta <= 1, beta m(beta) above.
double f_beta_minimizer(double beta);

HsIntegral hs_integral(const ModelParams& params, std::int64_t ell);

// E[X_1 ... X_ell] = Z_N(ell) / Z_N(0) by adaptive quadrature.
double hs_correlation(const ModelParams& params, std::int64_t ell);

// int exp(-t^m / m!) t^ell dt for even m; zero for odd ell.
double laplace_universal_integral(int m_order, int ell);

// Leading-order value of int exp(-n_scale F(t)) (t - t0)^ell phi(t) dt.
double laplace_approx(const LaplaceProblem& problem, double n_scale, int ell);

// Leading-order E[X_1 ... X_ell] as N -> infinity, ell even:
//   beta < 1: (ell-1)!! (beta/(1-beta))^{ell/2} N^{-ell/2}
//   beta = 1: N^{-ell/4} * quartic moment of order ell
//   beta > 1: m(beta)^ell
double corr_asymptotic(double beta, int ell, std::int64_t n);

}  // namespace cwlab

#endif  // CWLAB_ASYMPTOTICS_HPP
