#ifndef CWLAB_SAMPLER_HPP
#define CWLAB_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "cwlab/core.hpp"
#include "cwlab/exact.hpp"

namespace cwlab {

// SplitMix64. Independent substreams are derived with
//   substream(seed, task) = SplitMix64(mix(seed ^ mix(task + golden)))
// so batch i of a parallel run depends only on (seed, i).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t task);
  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on {0, ..., bound-1}; bound > 0. Lemire's multiply-shift with
  // rejection, so no modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

struct SampleBatch {
  ModelParams params;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> magnetizations;
  bool spins_materialized = false;
  // One +-1 vector per draw when spins_materialized is set.
  std::vector<std::vector<std::int8_t>> spins;
};

// i.i.d. draws of S_N by inverse CDF over the exact pmf. With
// materialize_spins, draw i also gets a spin vector whose (N+s)/2 up-spins sit
// at uniformly random positions (stream substream(seed, i + 1)).
SampleBatch sample_exact(const ModelParams& params, std::int64_t count, std::uint64_t seed,
                         bool materialize_spins = false);

// Spin vector for one magnetization, positions drawn from rng.
std::vector<std::int8_t> materialize_spins(std::int64_t n, std::int64_t s, SplitMix64& rng);

enum class ChainStart { random, all_up };

// Heat-bath Glauber dynamics. Site i becomes +1 with probability
// (1 + tanh(beta S_{-i} / N)) / 2; a sweep visits all N sites in a fresh
// random order. Records S_N after every sweep past burn_in.
SampleBatch glauber_chain(const ModelParams& params, std::int64_t sweeps, std::uint64_t seed,
                          std::int64_t burn_in, ChainStart start = ChainStart::random);

struct MomentEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Sample mean of (s / N^alpha)^K with its i.i.d. standard error.
MomentEstimate empirical_moment(const SampleBatch& batch, int big_k, double alpha);

// Same mean, with the standard error taken from num_batches contiguous batch
// means; use for autocorrelated chain output.
MomentEstimate empirical_moment_batch_means(const SampleBatch& batch, int big_k, double alpha,
                                            int num_batches);

}  // namespace cwlab

#endif  // CWLAB_SAMPLER_HPP
