#include "doctest.h"

#include <cmath>

#include "cwlab/combinatorics.hpp"
#include "cwlab/errors.hpp"
#include "cwlab/exact.hpp"

using namespace cwlab;

// Brute force over the 4 configurations of N = 2 at beta = 1.
const double kE = std::exp(1.0);
const double kPmfB1N2Edge = kE / (2.0 * kE + 2.0);  // 0.3655293
const double kPmfB1N2Mid = 2.0 / (2.0 * kE + 2.0);  // 0.2689414
const double kCorrB1N2 = (2.0 * kE - 2.0) / (2.0 * kE + 2.0);  // tanh(1/2)

TEST_CASE("pmf small cases") {
  const auto p0 = magnetization_pmf({0.0, 2});
  CHECK(p0.pmf(-2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p0.pmf(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p0.pmf(2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p0.pmf(1) == 0.0);
  CHECK(p0.pmf(4) == 0.0);

  for (double beta : {0.0, 0.7, 3.0}) {
    const auto p1 = magnetization_pmf({beta, 1});
    CHECK(p1.pmf(-1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p1.pmf(1) == doctest::Approx(0.5).epsilon(1e-15));
  }

  const auto p = magnetization_pmf({1.0, 2});
  CHECK(p.pmf(-2) == doctest::Approx(kPmfB1N2Edge).epsilon(1e-14));
  CHECK(p.pmf(0) == doctest::Approx(kPmfB1N2Mid).epsilon(1e-14));
  CHECK(p.pmf(2) == doctest::Approx(kPmfB1N2Edge).epsilon(1e-14));
  CHECK(std::tanh(0.5) == doctest::Approx(kCorrB1N2).epsilon(1e-15));
}

TEST_CASE("pmf invariants") {
  for (double beta : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 5.0}) {
    for (std::int64_t n : {1, 2, 3, 10, 101, 1000, 16384}) {
      const auto pmf = magnetization_pmf({beta, n});
      CHECK(pmf.size() == n + 1);
      double total = 0.0;
      for (std::int64_t k = 0; k <= n; ++k) total += pmf.probability(k);
      CHECK(std::fabs(total - 1.0) <= 1e-12);
      for (std::int64_t s = -n; s <= n; s += 2) REQUIRE(pmf.pmf(s) == pmf.pmf(-s));
      const auto support = pmf.support_points();
      CHECK(support.front() == -n);
      CHECK(support.back() == n);
    }
  }
}

TEST_CASE("pmf does not overflow at large N") {
  const auto pmf = magnetization_pmf({2.0, 1'000'000});
  CHECK(std::isfinite(pmf.log_partition()));
  CHECK(exact_scaled_moment(pmf, 2, 1.0) == doctest::Approx(0.9168139561241628).epsilon(1e-4));
}

TEST_CASE("exact correlation examples") {
  for (double beta : {0.0, 0.5, 1.0, 2.0}) {
    for (std::int64_t n : {5, 20, 300}) {
      CHECK(std::fabs(exact_correlation({beta, n}, 3)) <= 1e-14);
      CHECK(exact_correlation({beta, n}, 0) == 1.0);
    }
  }
  // independence at beta = 0; same code path as beta > 0, so zero up to rounding
  CHECK(std::fabs(exact_correlation({0.0, 10}, 2)) <= 1e-15);
  CHECK(exact_correlation({1.0, 2}, 2) == doctest::Approx(kCorrB1N2).epsilon(1e-13));
  CHECK_THROWS_AS(exact_correlation({1.0, 4}, 5), ArgumentError);
}

TEST_CASE("exact correlations are non-negative for even ell") {
  for (double beta : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
    for (std::int64_t n : {4, 10, 50, 200}) {
      for (int ell : {2, 4}) {
        CHECK(exact_correlation({beta, n}, ell) >= -1e-15);
      }
    }
  }
  // Griffiths-type monotonicity in beta: reported, not asserted.
  double previous = -1.0;
  int violations = 0;
  for (double beta : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
    const double c = exact_correlation({beta, 50}, 2);
    if (c < previous) ++violations;
    previous = c;
  }
  MESSAGE("monotonicity violations on the beta grid: " << violations);
}

TEST_CASE("exact scaled moment examples") {
  CHECK(exact_scaled_moment({0.0, 100}, 2, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  for (double beta : {0.0, 0.5, 1.0, 2.0}) {
    for (int k : {1, 3, 5}) {
      for (double alpha : {0.5, 0.75, 1.0}) CHECK(std::fabs(exact_scaled_moment({beta, 37}, k, alpha)) <= 1e-12);
    }
  }
  CHECK(exact_scaled_moment({0.5, 4096}, 2, 0.5) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(exact_scaled_moment({0.5, 4096}, 0, 0.5) == 1.0);
}

TEST_CASE("brute force oracle agrees with the magnetization reduction") {
  for (double beta : {0.0, 0.5, 1.0, 2.0}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      const ModelParams params(beta, n);
      for (std::int64_t ell = 0; ell <= std::min<std::int64_t>(4, n); ++ell) {
        CHECK(std::fabs(brute_force_correlation(params, ell) - exact_correlation(params, ell)) <= 1e-10);
      }
      for (int k = 0; k <= 6; ++k) {
        for (double alpha : {0.5, 0.75, 1.0}) {
          CHECK(std::fabs(brute_force_scaled_moment(params, k, alpha) - exact_scaled_moment(params, k, alpha)) <=
                1e-10);
        }
      }
    }
  }
  CHECK(brute_force_correlation({0.0, 3}, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(brute_force_correlation({1.0, 2}, 2) == doctest::Approx(kCorrB1N2).epsilon(1e-13));
  CHECK_THROWS_AS(brute_force_correlation({1.0, 21}, 2), RefusalError);
  CHECK_THROWS_AS(brute_force_scaled_moment({1.0, 21}, 2, 0.5), RefusalError);
}

TEST_CASE("exchangeability: E[S^K] from the census and exact correlations") {
  for (double beta : {0.0, 0.5, 1.0, 2.0}) {
    for (std::int64_t n = 1; n <= 10; ++n) {
      const ModelParams params(beta, n);
      for (int k = 1; k <= 6; ++k) {
        const auto census = census_brute(k, n);
        const double assembled = assemble_from_census(census, 0.0, [&](int ell) {
          return ell <= n ? exact_correlation(params, ell) : 0.0;
        });
        const double direct = exact_scaled_moment(params, k, 0.0);
        CHECK(std::fabs(assembled - direct) <= 1e-10 * std::max(1.0, std::fabs(direct)));
      }
    }
  }
}

TEST_CASE("double-sum route agrees with the recurrence route") {
  for (double beta : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
    for (std::int64_t n : {1, 2, 7, 10, 50, 200, 1000}) {
      for (std::int64_t ell = 0; ell <= std::min<std::int64_t>(6, n); ++ell) {
        const ModelParams params(beta, n);
        CHECK(std::fabs(exact_correlation_double_sum(params, ell) - exact_correlation(params, ell)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("exact correlation against 60-digit references") {
  struct Ref {
    double beta;
    std::int64_t n;
    int ell;
    double value;
  };
  // mpmath, hypergeometric conditional expectation summed over the pmf
  const Ref refs[] = {{0.5, 10000, 4, 2.9972027867670378148e-8},
                      {0.5, 1000, 4, 2.9722758057763041183e-6},
                      {1.0, 10000, 4, 0.00029039821653567249654},
                      {2.0, 10000, 4, 0.84047645127450267742},
                      {0.5, 10000, 2, 0.000099970015654911516975},
                      {0.25, 200, 6, 6.766915277727441722e-8}};
  for (const auto& r : refs) {
    CHECK(exact_correlation({r.beta, r.n}, r.ell) == doctest::Approx(r.value).epsilon(1e-11));
  }
}
