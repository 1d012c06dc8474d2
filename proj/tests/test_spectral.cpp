// test_spectral.cpp — eigendecomposition and localization diagnostics.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/spectral.hpp"

using namespace spinchain;

namespace {

constexpr double kPi = 3.14159265358979323846;

HamiltonianMatrix ordered_chain(int n, ChainModel model) {
  ChainConfig config;
  config.n_sites = n;
  config.model = model;
  return build_hamiltonian(sample_realization(config, {}, 0));
}

Eigen::VectorXd exponential_profile(int n, double center, double xi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = std::exp(-std::abs(i + 1 - center) / xi);
  return v / v.norm();
}

}  // namespace

TEST_CASE("ordered nearest-neighbor spectrum is the cosine band") {
  const auto es = eigendecompose(ordered_chain(5, ChainModel::NearestNeighbor));
  std::vector<double> expected;
  for (int k = 1; k <= 5; ++k) expected.push_back(2.0 * std::cos(kPi * k / 6));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 5; ++i)
    CHECK(es.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("diagonal matrices decompose to their sorted entries") {
  HamiltonianMatrix h;
  h.entries = Eigen::Vector3d(3.0, 1.0, 2.0).asDiagonal();
  h.labels.assign(3, SiteRole::Chain);
  const auto es = eigendecompose(h);
  CHECK(es.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(es.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(es.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("eigenpairs of a random symmetric matrix satisfy the residual, "
          "completeness and trace identities") {
  std::mt19937_64 engine(11);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = i; j < 50; ++j) m(i, j) = m(j, i) = gauss(engine);
  HamiltonianMatrix h;
  h.entries = m;
  h.labels.assign(50, SiteRole::Chain);

  const auto es = eigendecompose(h);
  const double scale = m.norm();
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd v = es.eigenvectors.col(k);
    CHECK((m * v - es.eigenvalues[k] * v).norm() <= 1e-9 * scale);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    if (k > 0) CHECK(es.eigenvalues[k] >= es.eigenvalues[k - 1]);
  }
  for (int i = 0; i < 50; ++i)
    CHECK(es.eigenvectors.row(i).squaredNorm() ==
          doctest::Approx(1.0).epsilon(1e-10));
  CHECK(es.eigenvalues.sum() ==
        doctest::Approx(m.trace()).epsilon(1e-9 * scale));
}

TEST_CASE("non-symmetric input is rejected") {
  HamiltonianMatrix h;
  h.entries = Eigen::MatrixXd::Zero(3, 3);
  h.entries(0, 1) = 1.0;
  h.labels.assign(3, SiteRole::Chain);
  CHECK_THROWS_AS(eigendecompose(h), std::invalid_argument);
}

TEST_CASE("closed-form long-range spectrum reaches the shifted band edges") {
  const auto e = ordered_long_range_spectrum(4000, 1.0);
  const double top = *std::max_element(e.begin(), e.end());
  const double bottom = *std::min_element(e.begin(), e.end());
  // Band edges of the infinite chain: 2 zeta(3) and -(3/2) zeta(3).
  CHECK(top == doctest::Approx(2.4041138).epsilon(1e-3));
  CHECK(bottom == doctest::Approx(-1.8030854).epsilon(1e-3));

  CHECK_THROWS_AS(ordered_long_range_spectrum(1, 1.0), std::invalid_argument);

  // The closed form scales linearly in the coupling and its first entry is
  // the band maximum (k runs from the top of the band down).
  const auto scaled = ordered_long_range_spectrum(50, 2.0);
  const auto unit = ordered_long_range_spectrum(50, 1.0);
  for (int k = 0; k < 50; ++k)
    CHECK(scaled[k] == doctest::Approx(2.0 * unit[k]).epsilon(1e-12));
  CHECK(unit[0] == doctest::Approx(*std::max_element(unit.begin(), unit.end())));
}

TEST_CASE("closed-form long-range spectrum tracks the numerical one") {
  const auto analytic = ordered_long_range_spectrum(200, 1.0);
  const auto es = eigendecompose(ordered_chain(200, ChainModel::LongRange));
  CHECK(analytic[0] == doctest::Approx(es.eigenvalues[199]).epsilon(5e-3));
  CHECK(analytic[199] == doctest::Approx(es.eigenvalues[0]).epsilon(5e-3));
}

TEST_CASE("localization fit recovers an exact exponential envelope") {
  const auto fit = localization_length(exponential_profile(101, 51, 10.0), 1.0);
  CHECK(fit.xi == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(fit.mu == doctest::Approx(51.0));
  CHECK_FALSE(fit.delocalized);
}

TEST_CASE("localization fit is scale invariant") {
  const Eigen::VectorXd v = exponential_profile(101, 40, 7.0);
  const auto a = localization_length(v, 1.0);
  const auto b = localization_length((37.5 * v).eval(), 1.0);
  CHECK(a.xi == doctest::Approx(b.xi).epsilon(1e-9));
  CHECK(a.mu == b.mu);
}

TEST_CASE("uniform profiles are reported delocalized at the clamp") {
  const Eigen::VectorXd v = Eigen::VectorXd::Constant(64, 1.0 / 8.0);
  const auto fit = localization_length(v, 1.0);
  CHECK(fit.delocalized);
  CHECK(fit.xi == doctest::Approx(64.0));
}

TEST_CASE("noisy exponential envelopes fit to within ten percent in the "
          "median") {
  std::mt19937_64 engine(5);
  std::normal_distribution<double> gauss;
  std::vector<double> fits;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd v = exponential_profile(201, 101, 15.0);
    for (int i = 0; i < 201; ++i) v[i] *= 1.0 + 0.05 * gauss(engine);
    fits.push_back(localization_length(v, 1.0).xi);
  }
  std::nth_element(fits.begin(), fits.begin() + 50, fits.end());
  CHECK(fits[50] == doctest::Approx(15.0).epsilon(0.10));
}

TEST_CASE("a profile with a single resolvable site falls back to the floor "
          "length") {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(9, 1e-15);
  v[4] = 1.0;
  const auto fit = localization_length(v, 2.0);
  CHECK(fit.xi == doctest::Approx(2.0 / std::log(1e12)));
  CHECK(fit.mu == doctest::Approx(10.0));
}

TEST_CASE("degenerate fit inputs are rejected") {
  CHECK_THROWS_AS(localization_length(Eigen::VectorXd::Zero(10), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(localization_length(Eigen::VectorXd::Ones(2), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(localization_length(Eigen::VectorXd::Ones(10), 0.0),
                  std::invalid_argument);
}

TEST_CASE("number variance measures weight astride the midpoint") {
  Eigen::VectorXd edge = Eigen::VectorXd::Zero(10);
  edge[0] = 1.0;
  CHECK(number_variance(edge) == doctest::Approx(0.0));

  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(16, 0.25);
  CHECK(number_variance(uniform) == doctest::Approx(0.25));

  Eigen::VectorXd split(2);
  split << std::sqrt(0.2), std::sqrt(0.8);
  CHECK(number_variance(split) == doctest::Approx(0.16));

  // Odd chains put the midpoint after site floor(N/2).
  Eigen::VectorXd odd = Eigen::VectorXd::Zero(5);
  odd[1] = 1.0;
  CHECK(number_variance(odd) == doctest::Approx(0.0));
  odd[1] = 0.0;
  odd[2] = 1.0;
  CHECK(number_variance(odd) == doctest::Approx(0.0));
}

TEST_CASE("expected number variance follows the 3/8 law when localized") {
  const int n = 400;
  CHECK(expected_number_variance(0.1 * n, n, 1.0) ==
        doctest::Approx(0.0375).epsilon(0.15));
  CHECK(expected_number_variance(20.0, n, 1.0) ==
        doctest::Approx(0.375 * 20.0 / n).epsilon(0.25));
  CHECK(expected_number_variance(1e-6, n, 1.0) < 1e-4);

  const double saturated = expected_number_variance(400.0, n, 1.0);
  CHECK(saturated < 0.25);
  CHECK(saturated > 0.1);

  CHECK(expected_number_variance(10.0, n, 1.0) <
        expected_number_variance(40.0, n, 1.0));
}

TEST_CASE("inverse participation ratio counts occupied sites") {
  Eigen::VectorXd single = Eigen::VectorXd::Zero(7);
  single[3] = 1.0;
  CHECK(ipr(single) == doctest::Approx(1.0));
  CHECK(ipr(Eigen::VectorXd::Constant(100, 0.1)) == doctest::Approx(0.01));
  Eigen::VectorXd pair = Eigen::VectorXd::Zero(6);
  pair[1] = pair[4] = 1.0 / std::sqrt(2.0);
  CHECK(ipr(pair) == doctest::Approx(0.5));
}

TEST_CASE("boundary support of the mid-band nearest-neighbor state") {
  const auto es = eigendecompose(ordered_chain(61, ChainModel::NearestNeighbor));
  const int k = select_target_state(es, 0.0);
  // Analytic amplitudes sqrt(2/62) sin(31 pi i / 62) at both ends.
  CHECK(boundary_support(es.eigenvectors.col(k)) ==
        doctest::Approx(2.0 / 62.0).epsilon(1e-9));

  Eigen::VectorXd v = Eigen::VectorXd::Zero(5);
  v[1] = 1.0;
  CHECK(boundary_support(v) == doctest::Approx(0.0));
}

TEST_CASE("long-range boundary support peaks mid-spectrum and collapses at "
          "the upper edge") {
  const auto es = eigendecompose(ordered_chain(61, ChainModel::LongRange));
  int best = 0;
  for (int k = 1; k < 61; ++k)
    if (boundary_support(es.eigenvectors.col(k)) >
        boundary_support(es.eigenvectors.col(best)))
      best = k;
  CHECK(std::abs(es.eigenvalues[best]) < 0.5);
  CHECK(boundary_support(es.eigenvectors.col(60)) <
        0.1 * boundary_support(es.eigenvectors.col(best)));
}

TEST_CASE("target-state selection minimizes the energy distance") {
  HamiltonianMatrix h;
  h.entries = Eigen::Vector3d(-1.0, -0.3, 0.1).asDiagonal();
  h.labels.assign(3, SiteRole::Chain);
  const auto es = eigendecompose(h);
  CHECK(select_target_state(es, -0.22) == 1);
  CHECK(select_target_state(es, 0.1) == 2);
  CHECK(select_target_state(es, -5.0) == 0);
}

TEST_CASE("exact distance ties go to the better-coupled state") {
  EigenSystem es;
  es.eigenvalues = Eigen::Vector2d(-1.0, 1.0);
  es.eigenvectors.resize(2, 2);
  es.eigenvectors.col(0) << 1.0, 0.0;
  es.eigenvectors.col(1) << std::sqrt(0.5), std::sqrt(0.5);
  CHECK(select_target_state(es, 0.0) == 1);
  std::swap(es.eigenvalues[0], es.eigenvalues[1]);
  CHECK(select_target_state(es, 0.0) == 1);
}

TEST_CASE("coupling rates project onto the end sites") {
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(100, 0.1);
  const auto zero = coupling_rates(uniform, 0.0, 0.0);
  CHECK(zero.omega_s == 0.0);
  CHECK(zero.omega_r == 0.0);
  const auto rates = coupling_rates(uniform, 1.0, 2.0);
  CHECK(rates.omega_s == doctest::Approx(0.1));
  CHECK(rates.omega_r == doctest::Approx(0.2));

  const auto es = eigendecompose(ordered_chain(11, ChainModel::NearestNeighbor));
  const int k = select_target_state(es, 0.0);
  const double js = 0.49 / std::sqrt(11.0);
  const auto mid = coupling_rates(es.eigenvectors.col(k), js, js);
  CHECK(std::abs(mid.omega_s) == doctest::Approx(0.0603).epsilon(2e-3));
  CHECK(std::abs(mid.omega_s) == doctest::Approx(std::abs(mid.omega_r)));
}

TEST_CASE("per-state analysis covers the whole spectrum with sane ranges") {
  const auto es = eigendecompose(ordered_chain(40, ChainModel::LongRange));
  const auto records = analyze_states(es, 1.0);
  REQUIRE(records.size() == 40);
  for (int i = 0; i < 40; ++i) {
    const auto& r = records[i];
    CHECK(r.k == i + 1);
    CHECK(r.energy == doctest::Approx(es.eigenvalues[i]));
    CHECK(r.xi > 0.0);
    CHECK(r.number_variance >= 0.0);
    CHECK(r.number_variance <= 0.25 + 1e-12);
    CHECK(r.ipr >= 1.0 / 40 - 1e-12);
    CHECK(r.ipr <= 1.0);
    CHECK(r.boundary_support >= 0.0);
    CHECK(r.boundary_support <= 0.5 + 1e-12);
  }
}
