#include "cwlab/log_math.hpp"

#include <algorithm>
#include <mutex>

namespace cwlab {

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  const double m = *std::max_element(xs.begin(), xs.end());
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

LogFactorials::LogFactorials(std::int64_t n) : table_(static_cast<std::size_t>(n) + 1, 0.0) {
  // Neumaier summation keeps ln(10^6 !) ~ 1.3e7 accurate to a few ulps.
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t k = 2; k <= n; ++k) {
    const double x = std::log(static_cast<double>(k));
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
    table_[static_cast<std::size_t>(k)] = sum + comp;
  }
}

std::shared_ptr<const LogFactorials> LogFactorials::at_least(std::int64_t n) {
  static std::mutex mutex;
  static std::shared_ptr<const LogFactorials> cached;
  std::lock_guard<std::mutex> lock(mutex);
  if (!cached || cached->max_n() < n) {
    // Grow geometrically so sweeps over increasing N rebuild rarely.
    const std::int64_t target = std::max<std::int64_t>(n, cached ? 2 * cached->max_n() : 64);
    cached = std::shared_ptr<const LogFactorials>(new LogFactorials(target));
  }
  return cached;
}

}  // namespace cwlab
