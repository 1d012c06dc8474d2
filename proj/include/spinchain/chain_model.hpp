// chain_model.hpp — disordered spin-chain realizations and their
// single-excitation Hamiltonians.
//
// A chain of N spins sits on a nominal 1D lattice x_j = a*j (j = 1..N).
// Disorder displaces each spin in the plane and detunes its energy. In the
// single-excitation subspace the Hamiltonian is the real symmetric N x N
// matrix with site energies on the diagonal and flip-flop couplings
// off-diagonal. Two coupling models are supported: the full power-law
// J_ij = C3 / r_ij^nu between every pair, and a nearest-neighbor chain with
// Gaussian bond disorder of width sigma_J equivalent to the positional
// disorder at first order.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace spinchain {

enum class ChainModel { LongRange, NearestNeighbor };

struct ChainConfig {
  int n_sites = 2;              // N
  double lattice_period = 1.0;  // a
  double c3 = 1.0;              // coupling coefficient C3
  double exponent = 3.0;        // power nu in J_ij = C3 / r^nu
  ChainModel model = ChainModel::LongRange;

  // Nearest-neighbor coupling of the ordered chain, J = C3 / a^3. Used as
  // the energy unit throughout.
  double coupling_j() const;

  // Throws ConfigError on out-of-range fields.
  void validate() const;
};

struct DisorderSpec {
  double sigma_epsilon = 0.0;  // site-energy std dev
  double sigma_x = 0.0;        // on-axis displacement std dev
  double sigma_y = 0.0;        // transverse displacement std dev
  double epsilon0 = 0.0;       // mean site energy
  std::uint64_t base_seed = 0;

  // Direct choice of the nearest-neighbor bond-disorder width. When unset,
  // sigma_J is derived from sigma_x and sigma_y via nn_coupling_sigma().
  std::optional<double> sigma_j_override;

  // Throws ConfigError on negative widths.
  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// One disorder draw: actual positions, site energies and (for the
// nearest-neighbor model) per-bond coupling deviates.
struct SpinChainRealization {
  std::vector<Point> positions;     // size N
  std::vector<double> energies;     // size N
  std::vector<double> bond_deltas;  // size N-1
  ChainConfig config;
};

enum class SiteRole { Sender, Chain, Receiver };

// Dense symmetric Hamiltonian with a role label per basis state. A bare
// chain is all Chain; extend_with_endpoints() prepends a Sender row and
// appends a Receiver row.
struct HamiltonianMatrix {
  Eigen::MatrixXd entries;
  std::vector<SiteRole> labels;

  int dimension() const { return static_cast<int>(entries.rows()); }
  bool has_endpoints() const {
    return !labels.empty() && labels.front() == SiteRole::Sender;
  }
};

struct EndpointParams {
  double epsilon_s = 0.0;  // sender detuning
  double epsilon_r = 0.0;  // receiver detuning
  double j_s = 0.0;        // sender-to-site-1 coupling
  double j_r = 0.0;        // site-N-to-receiver coupling
};

// Draws realization `realization_index` of the ensemble defined by the
// disorder spec. The draw order is fixed (energies, x shifts, y shifts,
// bond deltas) and every block is always consumed, so realizations at
// different disorder widths share deviates and zero widths reproduce the
// ordered chain exactly.
SpinChainRealization sample_realization(const ChainConfig& config,
                                        const DisorderSpec& disorder,
                                        std::uint64_t realization_index);

// Power-law coupling C3 / r^nu between two planar points. Throws
// std::domain_error("degenerate geometry") when the points coincide.
double dipole_coupling(Point a, Point b, double c3, double exponent);

// First-order width of the nearest-neighbor coupling distribution induced
// by positional disorder, evaluated at the nominal bond geometry (a, 0):
// sigma_J = 3 (C3 / a^4) sigma_x. The transverse width drops out at this
// order.
double nn_coupling_sigma(double sigma_x, double sigma_y, double lattice_period,
                         double c3);

// Single-excitation Hamiltonian of a realization: H_jj = eps_j, and either
// H_ij = C3 / r_ij^nu for all pairs (LongRange) or
// H_{j,j+1} = J + bond_deltas[j] (NearestNeighbor).
HamiltonianMatrix build_hamiltonian(const SpinChainRealization& realization);

// Embeds a bare chain Hamiltonian into the (N+2)-dimensional space with a
// sender state coupled to site 1 and a receiver state coupled to site N.
HamiltonianMatrix extend_with_endpoints(const HamiltonianMatrix& chain,
                                        const EndpointParams& endpoints);

}  // namespace spinchain
