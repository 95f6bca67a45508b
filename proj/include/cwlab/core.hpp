#ifndef CWLAB_CORE_HPP
#define CWLAB_CORE_HPP

#include <cstdint>
#include <string>
#include <variant>

namespace cwlab {

// Inverse temperature beta >= 0 and number of spins n >= 1 of a CW(beta, n)
// distribution.
struct ModelParams {
  double beta = 0.0;
  std::int64_t n = 1;

  ModelParams() = default;
  ModelParams(double beta, std::int64_t n);
};

// The four limit laws reached by S_N / N^alpha.
class LimitLaw {
 public:
  struct DiracZero {};
  struct TwoPointMix {
    double m;  // atoms at -m and +m, weight 1/2 each
  };
  struct CenteredNormal {
    double variance;
  };
  struct QuarticTilt {
    double normalizer;  // integral of exp(-t^4/12) over the real line
  };
  using Variant = std::variant<DiracZero, TwoPointMix, CenteredNormal, QuarticTilt>;

  static LimitLaw dirac_zero();
  static LimitLaw two_point_mix(double m);
  static LimitLaw centered_normal(double variance);
  static LimitLaw quartic_tilt();

  const Variant& variant() const { return v_; }
  std::string name() const;

  // k-th moment; see limit_moment().
  double moment(int k) const;

 private:
  explicit LimitLaw(Variant v) : v_(v) {}
  Variant v_;
};

// F_beta(t) = t^2 / (2 beta) - ln cosh t. Throws DomainError for beta <= 0.
double f_beta(double beta, double t);

// d^order/dt^order F_beta(t) for order in 1..4.
double f_beta_derivative(double beta, double t, int order);

// Unique positive root of x = tanh(beta x) for beta > 1; bisection on
// (1e-12, 1] followed by Newton polishing. Throws NoPositiveRoot for
// beta <= 1.
double spontaneous_magnetization(double beta);

double limit_moment(const LimitLaw& law, int k);

// Gamma on the positive reals.
double gamma_fn(double x);
// (k)!! with the conventions 0!! = (-1)!! = 1.
double double_factorial(int k);

}  // namespace cwlab

#endif  // CWLAB_CORE_HPP
