// test_rng.cpp — seeding discipline and the Gaussian sampler.
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "spinchain/rng.hpp"

using namespace spinchain;

TEST_CASE("splitmix64 maps distinct inputs to distinct outputs") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t x = 0; x < 10000; ++x) seen.insert(splitmix64(x));
  CHECK(seen.size() == 10000);
}

TEST_CASE("splitmix64 matches the reference stream") {
  // First two outputs of the published generator for seed 0, which steps its
  // state by the golden-ratio increment before finalizing.
  const std::uint64_t gamma = 0x9E3779B97F4A7C15ull;
  CHECK(splitmix64(gamma) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64(2 * gamma) == 0x6E789E6AA1B965F4ull);
}

TEST_CASE("realization seeds are distinct across indices and bases") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 5000; ++i) seen.insert(realization_seed(7, i));
  for (std::uint64_t s = 0; s < 5000; ++s) seen.insert(realization_seed(s, 3));
  // The two scans overlap in at most the one shared (base, index) pair.
  CHECK(seen.size() >= 9999);
  CHECK(realization_seed(7, 3) == realization_seed(7, 3));
  CHECK(realization_seed(7, 3) != realization_seed(7, 4));
  CHECK(realization_seed(7, 3) != realization_seed(8, 3));
}

TEST_CASE("equal seeds give bitwise equal gaussian streams") {
  GaussianSampler a(42), b(42), c(43);
  bool all_equal = true;
  bool any_differs = false;
  for (int i = 0; i < 64; ++i) {
    const double x = a.next();
    all_equal = all_equal && (x == b.next());
    any_differs = any_differs || (x != c.next());
  }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("the sampler produces standard-normal statistics") {
  GaussianSampler sampler(2024);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0, max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sampler.next();
    sum += x;
    sum2 += x * x;
    max_abs = std::max(max_abs, std::abs(x));
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
  CHECK(max_abs < 6.0);
  CHECK(max_abs > 3.0);
}

TEST_CASE("fill scales deviates by the requested width") {
  std::vector<double> unit(256), scaled(256);
  GaussianSampler a(5), b(5);
  a.fill(unit, 1.0);
  b.fill(scaled, 2.0);
  for (int i = 0; i < 256; ++i) CHECK(scaled[i] == 2.0 * unit[i]);
}

TEST_CASE("zero-width fills are exactly zero but still advance the engine") {
  std::vector<double> zeros(8), reference(8);
  GaussianSampler a(9), b(9);
  a.fill(zeros, 0.0);
  b.fill(reference, 1.0);
  for (const double z : zeros) CHECK(z == 0.0);
  // Both engines consumed the same number of draws, so they stay in step.
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
}
