// spectral.hpp — eigendecomposition and per-eigenstate localization
// diagnostics.
//
// Localization lengths come from an exponential fit of the eigenvector
// envelope |psi(x)| ~ exp(-|x - mu| / xi) on the nominal lattice, and the
// number variance measures particle-number fluctuations across the chain
// midpoint. Both quantities are per eigenstate; ensemble averaging lives in
// ensemble.hpp.
#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spinchain/chain_model.hpp"

namespace spinchain {

struct EigenSystem {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues[k]

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
};

struct LocalizationFit {
  double xi = 0.0;           // localization length
  double mu = 0.0;           // envelope peak position
  bool delocalized = false;  // true when the decay is too shallow to resolve
};

// Per-eigenstate localization diagnostics.
struct LocalizationRecord {
  int k = 0;  // 1-based index in ascending energy order
  double energy = 0.0;
  double xi = 0.0;
  double mu = 0.0;
  double number_variance = 0.0;
  double ipr = 0.0;
  double boundary_support = 0.0;
  bool delocalized = false;
};

// Full spectrum of a real symmetric Hamiltonian. Throws
// std::invalid_argument if the matrix is not exactly symmetric and
// AccuracyError if the solver fails to converge.
EigenSystem eigendecompose(const HamiltonianMatrix& h);

// Eigenvalues of the ordered long-range chain in closed form,
//   E_k = 2 J sum_{m=1}^{N} cos(pi k m / (N+1)) / m^3,   k = 1..N,
// returned in the order k = 1..N (descending in energy). Exact for the
// infinite chain; at finite N it approximates the open chain's spectrum.
std::vector<double> ordered_long_range_spectrum(int n_sites, double j);

// Fits |v_i| ~ exp(-|a i - mu| / xi) with mu pinned to the envelope maximum
// on the nominal lattice x_i = a i. The fit is an unweighted least-squares
// line through (|a i - mu|, ln |v_i|) over sites with |v_i| above
// 1e-12 * max |v|. Slopes shallower than -1/(10 a N) are reported as
// delocalized with xi clamped to a N. Throws std::invalid_argument on a
// null vector or fewer than 3 sites.
LocalizationFit localization_length(Eigen::Ref<const Eigen::VectorXd> v,
                                    double lattice_period);

// Number variance of the left half-chain (sites i <= floor(N/2)):
// Delta n^2 = p - p^2 with p the probability weight on the left half.
double number_variance(Eigen::Ref<const Eigen::VectorXd> v);

// Ensemble expectation of the number variance for an ideal exponentially
// localized state of length xi whose peak is equally likely to sit on any
// of the N lattice sites. Approaches (3/8) xi / (a N) for a << xi << a N.
double expected_number_variance(double xi, int n_sites, double lattice_period);

// Inverse participation ratio sum_i |v_i|^4.
double ipr(Eigen::Ref<const Eigen::VectorXd> v);

// Product of the end-site amplitudes |v_1 v_N|; measures how well a state
// couples to probes attached at both chain ends.
double boundary_support(Eigen::Ref<const Eigen::VectorXd> v);

// Index of the eigenvalue closest to e_target. Exact distance ties resolve
// to the state with the larger boundary support.
int select_target_state(const EigenSystem& es, double e_target);

struct CouplingRates {
  double omega_s = 0.0;
  double omega_r = 0.0;
};

// Effective sender/receiver coupling rates into chain eigenstate v:
// omega_s = j_s v_1, omega_r = j_r v_N.
CouplingRates coupling_rates(Eigen::Ref<const Eigen::VectorXd> v, double j_s,
                             double j_r);

// Localization diagnostics for every eigenstate of a decomposed chain.
std::vector<LocalizationRecord> analyze_states(const EigenSystem& es,
                                               double lattice_period);

}  // namespace spinchain
