// rng.hpp — seeded, counter-addressable random numbers for disorder ensembles.
//
// Realization i of an ensemble with base seed s draws from a generator seeded
// with realization_seed(s, i). The mapping is injective in the index, so
// realizations never share a stream, and realization i is reproducible in
// isolation without generating the preceding i-1 realizations.
#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace spinchain {

// SplitMix64 finalizer. Bijective on 64-bit integers.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for one disorder realization, mixing the ensemble base seed with the
// realization index. Distinct indices give distinct seeds for a fixed base.
std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t index);

// Standard-normal deviates on top of std::mt19937_64.
//
// std::normal_distribution is implementation-defined, so the Gaussian step is
// a hand-rolled Box-Muller transform: every deviate consumes exactly two
// engine outputs and the stream is identical on every platform.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  // One standard-normal deviate.
  double next();

  // Fills out[i] = stddev * next(). With stddev == 0 the result is exactly
  // zero while the engine still advances, so disorder fields at different
  // widths share the same underlying deviates.
  void fill(std::span<double> out, double stddev);

 private:
  std::mt19937_64 engine_;
};

}  // namespace spinchain
