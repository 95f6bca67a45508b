#include "cwlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cwlab/errors.hpp"

namespace cwlab {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
__extension__ typedef unsigned __int128 u128;
}

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t task) {
  return SplitMix64(mix(seed ^ mix(task + kGolden)));
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::vector<std::int8_t> materialize_spins(std::int64_t n, std::int64_t s, SplitMix64& rng) {
  if (s < -n || s > n || (s + n) % 2 != 0) throw ArgumentError("magnetization not in the support");
  const auto up = static_cast<std::size_t>((n + s) / 2);
  std::vector<std::size_t> index(static_cast<std::size_t>(n));
  std::iota(index.begin(), index.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `up` slots are a uniform random subset.
  for (std::size_t i = 0; i < up; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(index.size() - i));
    std::swap(index[i], index[j]);
  }
  std::vector<std::int8_t> spins(static_cast<std::size_t>(n), std::int8_t{-1});
  for (std::size_t i = 0; i < up; ++i) spins[index[i]] = 1;
  return spins;
}

SampleBatch sample_exact(const ModelParams& params, std::int64_t count, std::uint64_t seed,
                         bool materialize) {
  if (count < 1) throw ArgumentError("sample count must be positive");
  const MagnetizationPmf pmf(params);
  std::vector<double> cdf = pmf.probabilities();
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  cdf.back() = 1.0;

  SampleBatch batch{params, seed, {}, materialize, {}};
  batch.magnetizations.reserve(static_cast<std::size_t>(count));
  SplitMix64 rng = SplitMix64::substream(seed, 0);
  for (std::int64_t i = 0; i < count; ++i) {
    const double u = rng.uniform();
    const auto k = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    batch.magnetizations.push_back(pmf.support(std::min<std::int64_t>(k, params.n)));
  }
  if (materialize) {
    batch.spins.reserve(batch.magnetizations.size());
    for (std::size_t i = 0; i < batch.magnetizations.size(); ++i) {
      SplitMix64 local = SplitMix64::substream(seed, i + 1);
      batch.spins.push_back(materialize_spins(params.n, batch.magnetizations[i], local));
    }
  }
  return batch;
}

SampleBatch glauber_chain(const ModelParams& params, std::int64_t sweeps, std::uint64_t seed,
                          std::int64_t burn_in, ChainStart start) {
  if (burn_in < 0) throw ArgumentError("burn-in must be non-negative");
  if (sweeps <= burn_in) throw ArgumentError("sweeps must exceed burn-in");
  const std::int64_t n = params.n;
  SplitMix64 rng = SplitMix64::substream(seed, 0);

  std::vector<std::int8_t> spins(static_cast<std::size_t>(n), std::int8_t{1});
  if (start == ChainStart::random) {
    for (auto& x : spins) x = (rng.next() >> 63) ? std::int8_t{1} : std::int8_t{-1};
  }
  std::int64_t total = std::accumulate(spins.begin(), spins.end(), std::int64_t{0});

  // p_up[S_{-i} + n - 1] for S_{-i} in [-(n-1), n-1].
  std::vector<double> p_up(static_cast<std::size_t>(2 * n - 1));
  for (std::int64_t rest = -(n - 1); rest <= n - 1; ++rest) {
    p_up[static_cast<std::size_t>(rest + n - 1)] =
        0.5 * (1.0 + std::tanh(params.beta * static_cast<double>(rest) / static_cast<double>(n)));
  }

  SampleBatch batch{params, seed, {}, false, {}};
  batch.magnetizations.reserve(static_cast<std::size_t>(sweeps - burn_in));
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::int64_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    }
    for (std::size_t site : order) {
      const std::int64_t rest = total - spins[site];
      const std::int8_t next =
          rng.uniform() < p_up[static_cast<std::size_t>(rest + n - 1)] ? std::int8_t{1} : std::int8_t{-1};
      total += next - spins[site];
      spins[site] = next;
    }
    if (sweep >= burn_in) batch.magnetizations.push_back(total);
  }
  return batch;
}

namespace {

std::vector<double> scaled_powers(const SampleBatch& batch, int big_k, double alpha) {
  if (batch.magnetizations.empty()) throw ArgumentError("empty sample batch");
  if (big_k < 0) throw ArgumentError("moment order must be non-negative");
  const double scale = std::pow(static_cast<double>(batch.params.n), -alpha);
  std::vector<double> xs;
  xs.reserve(batch.magnetizations.size());
  for (std::int64_t s : batch.magnetizations) {
    xs.push_back(std::pow(static_cast<double>(s) * scale, big_k));
  }
  return xs;
}

MomentEstimate mean_and_error(const std::vector<double>& xs) {
  const double count = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (count - 1.0) / count)};
}

}  // namespace

MomentEstimate empirical_moment(const SampleBatch& batch, int big_k, double alpha) {
  return mean_and_error(scaled_powers(batch, big_k, alpha));
}

MomentEstimate empirical_moment_batch_means(const SampleBatch& batch, int big_k, double alpha,
                                            int num_batches) {
  const std::vector<double> xs = scaled_powers(batch, big_k, alpha);
  if (num_batches < 2 || static_cast<std::size_t>(num_batches) > xs.size()) {
    throw ArgumentError("need 2 <= num_batches <= sample count");
  }
  const std::size_t per = xs.size() / static_cast<std::size_t>(num_batches);
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(num_batches));
  for (int b = 0; b < num_batches; ++b) {
    const auto first = xs.begin() + static_cast<std::ptrdiff_t>(per * static_cast<std::size_t>(b));
    means.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(per), 0.0) /
                    static_cast<double>(per));
  }
  MomentEstimate est = mean_and_error(means);
  est.estimate = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  return est;
}

}  // namespace cwlab
