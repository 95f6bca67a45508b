#ifndef CWLAB_ERRORS_HPP
#define CWLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cwlab {

// Bad argument shape: order out of range, odd ell where even is required,
// inconsistent mode, empty input.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the formula (e.g. beta = 0 in
// the integral representation).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// x = tanh(beta x) has only the trivial root for beta <= 1.
class NoPositiveRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cost guard on the enumeration oracles.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical procedure did not reach its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cwlab

#endif  // CWLAB_ERRORS_HPP
