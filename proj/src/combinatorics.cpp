#include "cwlab/combinatorics.hpp"

#include <algorithm>
#include <cmath>

#include "cwlab/asymptotics.hpp"
#include "cwlab/errors.hpp"

namespace cwlab {

namespace {

constexpr double kCensusMaxTuples = 1e7;

BigInt factorial(std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

// n! / (n - k)!
BigInt falling_factorial(std::int64_t n, std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < k; ++i) r *= (n - i);
  return r;
}

double to_double(const BigInt& x) { return x.convert_to<double>(); }

void check_k_r(int big_k, int r) {
  if (big_k < 0) throw ArgumentError("tuple length K must be non-negative");
  if (r < 0 || r > big_k) throw ArgumentError("r must satisfy 0 <= r <= K");
}

}  // namespace

BigInt MultiindexCensus::total() const {
  BigInt t = 0;
  for (const auto& x : w) t += x;
  return t;
}

BigInt w0_closed_form(int big_k, std::int64_t n, int r) {
  check_k_r(big_k, r);
  if (n < 1) throw ArgumentError("n must be at least 1");
  if ((big_k - r) % 2 != 0) return 0;
  const int pairs = (big_k - r) / 2;
  const std::int64_t distinct = r + pairs;
  if (distinct > n) return 0;
  // Ordered choice of the distinct indices, times placements: K! / (r! pairs! 2^pairs).
  BigInt placements = factorial(big_k) / (factorial(r) * factorial(pairs));
  placements >>= pairs;
  return falling_factorial(n, distinct) * placements;
}

double w_upper_bound(int big_k, std::int64_t n, int r) {
  check_k_r(big_k, r);
  return to_double(factorial(big_k)) * std::pow(static_cast<double>(n), 0.5 * (big_k + r));
}

double w_plus_upper_bound(int big_k, std::int64_t n, int r) {
  check_k_r(big_k, r);
  return to_double(factorial(big_k)) * std::pow(static_cast<double>(n), 0.5 * (big_k + r) - 0.5);
}

MultiindexCensus census_brute(int big_k, std::int64_t n) {
  if (big_k < 1) throw ArgumentError("tuple length K must be positive");
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (big_k * std::log10(static_cast<double>(n)) > std::log10(kCensusMaxTuples) + 1e-12) {
    throw RefusalError("census enumeration refused: N^K exceeds 1e7");
  }

  const auto slots = static_cast<std::size_t>(big_k) + 1;
  std::vector<std::uint64_t> w(slots, 0), w0(slots, 0), w_plus(slots, 0), by_odd(slots, 0);

  std::vector<std::int64_t> tuple(static_cast<std::size_t>(big_k), 0);
  std::vector<std::int64_t> sorted(tuple.size());
  while (true) {
    sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    int singles = 0;
    int odd = 0;
    int max_mult = 0;
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const int mult = static_cast<int>(j - i);
      singles += (mult == 1);
      odd += (mult % 2);
      max_mult = std::max(max_mult, mult);
      i = j;
    }
    ++w[static_cast<std::size_t>(singles)];
    if (max_mult <= 2) {
      ++w0[static_cast<std::size_t>(singles)];
    } else {
      ++w_plus[static_cast<std::size_t>(singles)];
      ++by_odd[static_cast<std::size_t>(odd)];
    }

    // Odometer increment.
    std::size_t pos = 0;
    while (pos < tuple.size() && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos == tuple.size()) break;
  }

  MultiindexCensus census;
  census.big_k = big_k;
  census.n = n;
  for (std::size_t r = 0; r < slots; ++r) {
    census.w.emplace_back(w[r]);
    census.w0.emplace_back(w0[r]);
    census.w_plus.emplace_back(w_plus[r]);
    census.w_plus_by_odd.emplace_back(by_odd[r]);
  }
  return census;
}

AssemblyMode parse_assembly_mode(const std::string& name) {
  if (name == "lln") return AssemblyMode::lln;
  if (name == "clt") return AssemblyMode::clt;
  if (name == "nclt") return AssemblyMode::nclt;
  throw ArgumentError("unknown assembly mode '" + name + "'");
}

std::string to_string(AssemblyMode mode) {
  switch (mode) {
    case AssemblyMode::lln:
      return "lln";
    case AssemblyMode::clt:
      return "clt";
    case AssemblyMode::nclt:
      return "nclt";
  }
  return "?";
}

AssembledMoment assemble_moment(double beta, std::int64_t n, int big_k, double alpha,
                                AssemblyMode mode) {
  if (!(beta >= 0.0)) throw ArgumentError("beta must be non-negative");
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (big_k < 0) throw ArgumentError("moment order must be non-negative");
  switch (mode) {
    case AssemblyMode::lln:
      if (alpha != 1.0) throw ArgumentError("lln assembly uses alpha = 1");
      break;
    case AssemblyMode::clt:
      if (!(beta < 1.0) || alpha != 0.5) throw ArgumentError("clt assembly needs beta < 1 and alpha = 1/2");
      break;
    case AssemblyMode::nclt:
      if (beta != 1.0 || alpha != 0.75) throw ArgumentError("nclt assembly needs beta = 1 and alpha = 3/4");
      break;
  }
  if (big_k == 0) return {1.0, 0.0};

  std::vector<double> corr(static_cast<std::size_t>(big_k) + 1, 0.0);
  for (int l = 0; l <= big_k; l += 2) corr[static_cast<std::size_t>(l)] = corr_asymptotic(beta, l, n);

  const double scale = std::pow(static_cast<double>(n), -alpha * big_k);
  AssembledMoment out;
  for (int r = 0; r <= big_k; ++r) {
    const double c = corr[static_cast<std::size_t>(r)];
    if (c != 0.0) out.value += to_double(w0_closed_form(big_k, n, r)) * c;

    // W+(r) is empty unless some index occurs three times or more. Its tuples
    // reduce to a product of l >= r distinct spins with l = K (mod 2).
    if (big_k - r >= 3) {
      double cmax = 0.0;
      for (int l = r; l <= big_k; ++l) {
        if ((l - big_k) % 2 == 0) cmax = std::max(cmax, std::fabs(corr[static_cast<std::size_t>(l)]));
      }
      out.w_plus_bound += w_plus_upper_bound(big_k, n, r) * cmax;
    }
  }
  out.value *= scale;
  out.w_plus_bound *= scale;
  return out;
}

double assemble_from_census(const MultiindexCensus& census, double alpha,
                            const std::function<double(int)>& correlation) {
  double sum = 0.0;
  for (int r = 0; r <= census.big_k; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    if (census.w0[idx] != 0) sum += to_double(census.w0[idx]) * correlation(r);
    if (census.w_plus_by_odd[idx] != 0) sum += to_double(census.w_plus_by_odd[idx]) * correlation(r);
  }
  return sum * std::pow(static_cast<double>(census.n), -alpha * census.big_k);
}

bool MomentConvergenceReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

MomentConvergenceReport moment_convergence_report(const MomentSequence& seq, const LimitLaw& law,
                                                  double tolerance) {
  if (seq.n.empty() || seq.moments.empty()) throw ArgumentError("empty moment sequence");
  if (seq.n.size() != seq.moments.size()) throw ArgumentError("moment rows do not match the N grid");
  if (!std::is_sorted(seq.n.begin(), seq.n.end())) throw ArgumentError("N must be increasing");
  const std::size_t width = seq.moments.front().size();
  if (width == 0) throw ArgumentError("empty moment sequence");
  for (const auto& row : seq.moments) {
    if (row.size() != width) throw ArgumentError("ragged moment table");
  }
  if (!(tolerance >= 0.0)) throw ArgumentError("tolerance must be non-negative");

  MomentConvergenceReport report;
  report.law = law.name();
  report.tolerance = tolerance;
  for (std::size_t k = 0; k < width; ++k) {
    MomentConvergenceRow row;
    row.k = static_cast<int>(k);
    row.limit = law.moment(row.k);
    row.first_gap = std::fabs(seq.moments.front()[k] - row.limit);
    row.last_gap = std::fabs(seq.moments.back()[k] - row.limit);
    row.decreased = row.last_gap < row.first_gap;
    const double allowed = row.limit != 0.0 ? tolerance * std::fabs(row.limit) : tolerance;
    row.pass = row.last_gap <= allowed && row.last_gap <= row.first_gap;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cwlab
