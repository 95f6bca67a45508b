#ifndef CWLAB_LOG_MATH_HPP
#define CWLAB_LOG_MATH_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace cwlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum_i exp(x_i)); -inf for an empty span.
double log_sum_exp(std::span<const double> xs);

// ln cosh(t) = |t| - ln 2 + ln(1 + e^{-2|t|}); finite for any finite t.
inline double log_cosh(double t) {
  const double a = std::fabs(t);
  return a - std::log(2.0) + std::log1p(std::exp(-2.0 * a));
}

// Streaming log-sum-exp: add(x) accumulates exp(x) while keeping the running
// sum scaled by the largest exponent seen so far.
class LogAccumulator {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  double log_value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }
  // sum exp(x_i - shift) without rounding through log_value().
  double scaled(double shift) const { return max_ == kNegInf ? 0.0 : std::exp(max_ - shift) * sum_; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// Signed sums in log space: terms sign * exp(log_magnitude) go into separate
// positive and negative accumulators; value(shift) = (P - N) * exp(-shift).
class SignedLogAccumulator {
 public:
  void add(double log_magnitude, bool negative) {
    (negative ? neg_ : pos_).add(log_magnitude);
  }
  double log_positive() const { return pos_.log_value(); }
  double log_negative() const { return neg_.log_value(); }
  double value(double log_shift = 0.0) const { return pos_.scaled(log_shift) - neg_.scaled(log_shift); }

 private:
  LogAccumulator pos_;
  LogAccumulator neg_;
};

// Table of ln(k!) for k = 0..n, built by compensated cumulative summation of
// ln k. Tables are prefixes of one another, so a single process-wide table
// is grown on demand and shared read-only.
class LogFactorials {
 public:
  // Returns a table covering at least 0..n. Thread-safe.
  static std::shared_ptr<const LogFactorials> at_least(std::int64_t n);

  double operator()(std::int64_t k) const { return table_[static_cast<std::size_t>(k)]; }
  double log_binomial(std::int64_t n, std::int64_t k) const {
    if (k < 0 || k > n) return kNegInf;
    // Evaluate in a fixed order so that C(n,k) and C(n,n-k) agree bit for bit.
    const std::int64_t lo = k < n - k ? k : n - k;
    return (*this)(n) - (*this)(lo) - (*this)(n - lo);
  }
  std::int64_t max_n() const { return static_cast<std::int64_t>(table_.size()) - 1; }

 private:
  explicit LogFactorials(std::int64_t n);
  std::vector<double> table_;
};

}  // namespace cwlab

#endif  // CWLAB_LOG_MATH_HPP
