#include "cwlab/core.hpp"

#include <cmath>
#include <sstream>

#include "cwlab/errors.hpp"
#include "cwlab/log_math.hpp"

namespace cwlab {

ModelParams::ModelParams(double beta_, std::int64_t n_) : beta(beta_), n(n_) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ArgumentError("beta must be a finite non-negative number");
  }
  if (n < 1) throw ArgumentError("n must be at least 1");
}

LimitLaw LimitLaw::dirac_zero() { return LimitLaw(DiracZero{}); }

LimitLaw LimitLaw::two_point_mix(double m) {
  if (!(m > 0.0 && m < 1.0)) throw ArgumentError("two-point atom must lie in (0,1)");
  return LimitLaw(TwoPointMix{m});
}

LimitLaw LimitLaw::centered_normal(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw ArgumentError("normal variance must be positive");
  }
  return LimitLaw(CenteredNormal{variance});
}

LimitLaw LimitLaw::quartic_tilt() {
  // int exp(-t^4/12) dt = 2 * 12^{1/4} * Gamma(5/4) = 12^{1/4} Gamma(1/4) / 2
  return LimitLaw(QuarticTilt{std::pow(12.0, 0.25) * gamma_fn(0.25) / 2.0});
}

std::string LimitLaw::name() const {
  struct Namer {
    std::string operator()(const DiracZero&) const { return "dirac_zero"; }
    std::string operator()(const TwoPointMix& l) const {
      std::ostringstream os;
      os.precision(17);
      os << "two_point_mix(" << l.m << ")";
      return os.str();
    }
    std::string operator()(const CenteredNormal& l) const {
      std::ostringstream os;
      os.precision(17);
      os << "centered_normal(" << l.variance << ")";
      return os.str();
    }
    std::string operator()(const QuarticTilt&) const { return "quartic_tilt"; }
  };
  return std::visit(Namer{}, v_);
}

double LimitLaw::moment(int k) const { return limit_moment(*this, k); }

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn is defined here for x > 0 only");
  return std::tgamma(x);
}

double double_factorial(int k) {
  if (k < -1) throw ArgumentError("double factorial needs k >= -1");
  double r = 1.0;
  for (int j = k; j > 1; j -= 2) r *= j;
  return r;
}

double f_beta(double beta, double t) {
  if (!(beta > 0.0)) throw DomainError("F_beta requires beta > 0");
  return t * t / (2.0 * beta) - log_cosh(t);
}

double f_beta_derivative(double beta, double t, int order) {
  if (order < 1 || order > 4) throw ArgumentError("derivative order must be in 1..4");
  if (!(beta > 0.0)) throw DomainError("F_beta requires beta > 0");
  const double th = std::tanh(t);
  const double sech2 = 1.0 - th * th;
  switch (order) {
    case 1:
      return t / beta - th;
    case 2:
      return 1.0 / beta - sech2;
    case 3:
      return 2.0 * th * sech2;
    default:
      return 2.0 * sech2 * sech2 - 4.0 * th * th * sech2;
  }
}

double spontaneous_magnetization(double beta) {
  if (!(beta > 1.0)) {
    throw NoPositiveRoot("x = tanh(beta x) has no positive root for beta <= 1");
  }
  // g(x) = x - tanh(beta x) is negative just above 0 and positive at 1.
  auto g = [beta](double x) { return x - std::tanh(beta * x); };
  double lo = 1e-12;
  double hi = 1.0;
  if (g(hi) <= 0.0) return 1.0;  // tanh(beta) rounds to 1
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double th = std::tanh(beta * x);
    const double dg = 1.0 - beta * (1.0 - th * th);
    if (dg <= 0.0) break;
    const double step = (x - th) / dg;
    const double next = x - step;
    if (!(next > 0.0 && next <= 1.0)) break;
    x = next;
    if (std::fabs(step) < 1e-17) break;
  }
  if (std::fabs(g(x)) > 1e-14) {
    throw NumericError("fixed-point solve missed its residual bound");
  }
  return x;
}

double limit_moment(const LimitLaw& law, int k) {
  if (k < 0) throw ArgumentError("moment order must be non-negative");
  if (k == 0) return 1.0;
  const bool odd = (k % 2) != 0;
  struct Moment {
    int k;
    bool odd;
    double operator()(const LimitLaw::DiracZero&) const { return 0.0; }
    double operator()(const LimitLaw::TwoPointMix& l) const { return odd ? 0.0 : std::pow(l.m, k); }
    double operator()(const LimitLaw::CenteredNormal& l) const {
      return odd ? 0.0 : double_factorial(k - 1) * std::pow(l.variance, 0.5 * k);
    }
    double operator()(const LimitLaw::QuarticTilt&) const {
      if (odd) return 0.0;
      // int t^k e^{-t^4/12} / int e^{-t^4/12} = 12^{k/4} Gamma((k+1)/4) / Gamma(1/4)
      return std::exp(0.25 * k * std::log(12.0) + std::lgamma(0.25 * (k + 1)) - std::lgamma(0.25));
    }
  };
  return std::visit(Moment{k, odd}, law.variant());
}

}  // namespace cwlab
