#ifndef CWLAB_COMBINATORICS_HPP
#define CWLAB_COMBINATORICS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cwlab/core.hpp"

namespace cwlab {

using BigInt = boost::multiprecision::cpp_int;

// Counts of K-tuples (i_1..i_K) over {1..N}, classified by
//   r    = number of indices occurring exactly once,
//   zero = no index occurs more than twice (w0), plus = the rest (w_plus).
// w_plus_by_odd[l] counts the tuples of the "plus" class having exactly l
// indices with odd multiplicity; in the "zero" class that number is r.
struct MultiindexCensus {
  int big_k = 0;
  std::int64_t n = 0;
  std::vector<BigInt> w;       // size K+1
  std::vector<BigInt> w0;      // size K+1
  std::vector<BigInt> w_plus;  // size K+1
  std::vector<BigInt> w_plus_by_odd;  // size K+1

  BigInt total() const;
};

// |W0_{K,N}(r)|, exact.
BigInt w0_closed_form(int big_k, std::int64_t n, int r);

// Upper bounds K! N^{(K+r)/2} on w(r) and K! N^{(K+r)/2 - 1/2} on w_plus(r).
double w_upper_bound(int big_k, std::int64_t n, int r);
double w_plus_upper_bound(int big_k, std::int64_t n, int r);

// Enumerates all N^K tuples. RefusalError if N^K > 1e7.
MultiindexCensus census_brute(int big_k, std::int64_t n);

enum class AssemblyMode { lln, clt, nclt };

AssemblyMode parse_assembly_mode(const std::string& name);
std::string to_string(AssemblyMode mode);

struct AssembledMoment {
  double value = 0.0;        // N^{-alpha K} sum_r w0(r) corr(r)
  double w_plus_bound = 0.0; // bound on the dropped W+ contribution
};

// Moment of S_N / N^alpha rebuilt from multiindex counts and the leading
// asymptotics of the correlations. Throws ArgumentError when mode does not
// match (beta, alpha): lln needs alpha = 1, clt beta < 1 and alpha = 1/2,
// nclt beta = 1 and alpha = 3/4.
AssembledMoment assemble_moment(double beta, std::int64_t n, int big_k, double alpha,
                                AssemblyMode mode);

// Exact bookkeeping: N^{-alpha K} times the sum over all tuples of
// correlation(l), l = number of odd-multiplicity indices. Equals
// E[(S_N/N^alpha)^K] when correlation is the exact one.
double assemble_from_census(const MultiindexCensus& census, double alpha,
                            const std::function<double(int)>& correlation);

struct MomentSequence {
  std::vector<std::int64_t> n;             // increasing
  std::vector<std::vector<double>> moments;  // moments[i][k], k = 0..K_max
};

struct MomentConvergenceRow {
  int k = 0;
  double limit = 0.0;
  double first_gap = 0.0;
  double last_gap = 0.0;
  bool decreased = false;
  bool pass = false;
};

struct MomentConvergenceReport {
  std::string law;
  double tolerance = 0.0;
  std::vector<MomentConvergenceRow> rows;
  bool all_pass() const;
};

// For each k: gap |m_k(N) - m_k(law)| at the smallest and largest N. A row
// passes when the last gap is within tolerance (relative to |m_k(law)|, or
// absolute when the limit moment is zero) and did not grow.
//
// The method of moments also needs |m_k(law)| <= A C^k k!. All four laws
// satisfy it: the Dirac and two-point laws are bounded, normal moments are
// (k-1)!! sigma^k and the quartic ones grow like Gamma((k+1)/4) 12^{k/4}.
MomentConvergenceReport moment_convergence_report(const MomentSequence& seq, const LimitLaw& law,
                                                  double tolerance);

}  // namespace cwlab

#endif  // CWLAB_COMBINATORICS_HPP
