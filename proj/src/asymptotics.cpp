#include "cwlab/asymptotics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "cwlab/errors.hpp"
#include "cwlab/log_math.hpp"

namespace cwlab {

namespace {

// exp(-40) ~ 4e-18: beyond T the stabilised integrand is below 1e-16 of its
// peak and keeps falling at least like a Gaussian.
constexpr double kTailExponent = 40.0;
constexpr double kQuadratureTolerance = 1e-14;
constexpr unsigned kMaxDepth = 8;
constexpr double kMaxPanels = 4096.0;

// Smallest T > t0 with n (F(T) - F(t0)) >= kTailExponent.
double truncation_point(double beta, double n, double t0, double f0) {
  auto excess = [&](double t) { return n * (f_beta(beta, t) - f0) - kTailExponent; };
  double lo = t0;
  double hi = t0 + 1.0;
  while (excess(hi) < 0.0) {
    lo = hi;
    hi = t0 + 2.0 * (hi - t0);
  }
  for (int it = 0; it < 100 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

double integrate(const std::function<double(double)>& g, double a, double b) {
  if (b <= a) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      g, a, b, kMaxDepth, kQuadratureTolerance, &error, &l1);
  if (!std::isfinite(value)) throw NumericError("quadrature produced a non-finite value");
  return value;
}

// Sum of panel integrals, panels no wider than `width`. Keeps each adaptive
// call on a region where the integrand is smooth on its own scale.
double integrate_panels(const std::function<double(double)>& g, double a, double b, double width) {
  if (b <= a) return 0.0;
  const double panels = std::min(kMaxPanels, std::ceil((b - a) / width));
  const auto count = static_cast<int>(std::max(1.0, panels));
  const double h = (b - a) / count;
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    total += integrate(g, a + i * h, i + 1 == count ? b : a + (i + 1) * h);
  }
  return total;
}

}  // namespace

void LaplaceProblem::validate() const {
  if (m_order <= 0 || m_order % 2 != 0) {
    throw ArgumentError("Laplace order m must be a positive even integer");
  }
  if (!(fm_at_t0 > 0.0)) throw ArgumentError("F^(m)(t0) must be positive");
  if (!phi) throw ArgumentError("Laplace problem needs a weight function");
}

double f_beta_minimizer(double beta) {
  if (!(beta > 0.0)) throw DomainError("F_beta requires beta > 0");
  return beta > 1.0 ? beta * spontaneous_magnetization(beta) : 0.0;
}

HsIntegral hs_integral(const ModelParams& params, std::int64_t ell) {
  if (!(params.beta > 0.0)) {
    throw DomainError("the integral representation requires beta > 0");
  }
  if (ell < 0 || ell > params.n) throw ArgumentError("correlation order must satisfy 0 <= ell <= n");

  const double beta = params.beta;
  const double n = static_cast<double>(params.n);
  const double t0 = f_beta_minimizer(beta);
  const double f0 = f_beta(beta, t0);

  HsIntegral out{params, ell, kNegInf, n * f0};
  if (ell % 2 != 0) return out;

  const double t_max = truncation_point(beta, n, t0, f0);
  const int power = static_cast<int>(ell);
  const std::function<double(double)> g = [&](double t) {
    const double w = std::exp(-n * (f_beta(beta, t) - f0));
    return power == 0 ? w : w * std::pow(std::tanh(t), power);
  };
  // Even integrand: integrate the half line, splitting at the peak.
  // Peak width: Gaussian scale, or the quartic one when F'' vanishes at t0.
  const double curvature = f_beta_derivative(beta, t0, 2);
  double width = std::pow(12.0 / n, 0.25);
  if (curvature > 0.0) width = std::min(width, 1.0 / std::sqrt(n * curvature));
  double half = integrate_panels(g, 0.0, t0, width) + integrate_panels(g, t0, t_max, width);
  out.log_value = std::log(2.0 * half);
  return out;
}

double hs_correlation(const ModelParams& params, std::int64_t ell) {
  const HsIntegral numerator = hs_integral(params, ell);
  if (ell % 2 != 0) return 0.0;
  if (ell == 0) return 1.0;
  const HsIntegral denominator = hs_integral(params, 0);
  return std::exp(numerator.log_value - denominator.log_value);
}

double laplace_universal_integral(int m_order, int ell) {
  if (m_order <= 0 || m_order % 2 != 0) {
    throw ArgumentError("Laplace order m must be a positive even integer");
  }
  if (ell < 0) throw ArgumentError("ell must be non-negative");
  if (ell % 2 != 0) return 0.0;
  // Substituting u = t^m / m! gives (2/m) (m!)^{(ell+1)/m} Gamma((ell+1)/m).
  const double m = m_order;
  const double p = (ell + 1.0) / m;
  return (2.0 / m) * std::exp(p * std::lgamma(m + 1.0) + std::lgamma(p));
}

double laplace_approx(const LaplaceProblem& problem, double n_scale, int ell) {
  problem.validate();
  if (!(n_scale > 0.0)) throw ArgumentError("n_scale must be positive");
  if (ell < 0) throw ArgumentError("ell must be non-negative");
  const double phi0 = problem.phi(problem.t0);
  if (phi0 == 0.0 || !std::isfinite(phi0)) {
    throw ArgumentError("degenerate weight: phi(t0) must be finite and non-zero");
  }
  if (ell % 2 != 0) return 0.0;
  const double m = problem.m_order;
  return std::pow(1.0 / (n_scale * problem.fm_at_t0), (ell + 1.0) / m) * phi0 *
         laplace_universal_integral(problem.m_order, ell);
}

double corr_asymptotic(double beta, int ell, std::int64_t n) {
  if (ell < 0 || ell % 2 != 0) throw ArgumentError("corr_asymptotic needs an even ell >= 0");
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (ell == 0) return 1.0;
  const double nd = static_cast<double>(n);
  if (beta < 1.0) {
    return double_factorial(ell - 1) * std::pow(beta / (1.0 - beta), 0.5 * ell) *
           std::pow(nd, -0.5 * ell);
  }
  if (beta == 1.0) {
    return std::pow(nd, -0.25 * ell) * limit_moment(LimitLaw::quartic_tilt(), ell);
  }
  return std::pow(spontaneous_magnetization(beta), ell);
}

}  // namespace cwlab
