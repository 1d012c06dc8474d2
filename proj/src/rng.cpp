#include "spinchain/rng.hpp"

#include <cmath>

namespace spinchain {

std::uint64_t splitmix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(base_seed ^ splitmix64(index + 0x9E3779B97F4A7C15ull));
}

namespace {

// Map to (0,1]; the +1 keeps log() finite at the lower end.
double to_open_unit(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// Map to [0,1).
double to_half_open_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

double GaussianSampler::next() {
  const double u1 = to_open_unit(engine_());
  const double u2 = to_half_open_unit(engine_());
  const double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

void GaussianSampler::fill(std::span<double> out, double stddev) {
  for (double& v : out) v = stddev * next();
}

}  // namespace spinchain
