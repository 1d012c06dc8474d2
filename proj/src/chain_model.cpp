#include "spinchain/chain_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinchain/errors.hpp"
#include "spinchain/rng.hpp"

namespace spinchain {

double ChainConfig::coupling_j() const {
  return c3 / (lattice_period * lattice_period * lattice_period);
}

void ChainConfig::validate() const {
  if (n_sites < 2)
    throw ConfigError("chain: N must be at least 2, got " +
                      std::to_string(n_sites));
  if (!(lattice_period > 0.0))
    throw ConfigError("chain: lattice period must be positive");
  if (!(c3 > 0.0)) throw ConfigError("chain: C3 must be positive");
  if (!(exponent > 0.0)) throw ConfigError("chain: exponent must be positive");
}

void DisorderSpec::validate() const {
  if (sigma_epsilon < 0.0)
    throw ConfigError("disorder: sigma_epsilon must be >= 0");
  if (sigma_x < 0.0) throw ConfigError("disorder: sigma_x must be >= 0");
  if (sigma_y < 0.0) throw ConfigError("disorder: sigma_y must be >= 0");
  if (sigma_j_override && *sigma_j_override < 0.0)
    throw ConfigError("disorder: sigma_J must be >= 0");
}

SpinChainRealization sample_realization(const ChainConfig& config,
                                        const DisorderSpec& disorder,
                                        std::uint64_t realization_index) {
  config.validate();
  disorder.validate();
  const int n = config.n_sites;
  const double a = config.lattice_period;

  GaussianSampler rng(realization_seed(disorder.base_seed, realization_index));
  std::vector<double> de(n), dx(n), dy(n), dj(n - 1);
  rng.fill(de, disorder.sigma_epsilon);
  rng.fill(dx, disorder.sigma_x);
  rng.fill(dy, disorder.sigma_y);
  const double sigma_j =
      disorder.sigma_j_override
          ? *disorder.sigma_j_override
          : nn_coupling_sigma(disorder.sigma_x, disorder.sigma_y, a, config.c3);
  rng.fill(dj, sigma_j);

  SpinChainRealization r;
  r.config = config;
  r.positions.resize(n);
  r.energies.resize(n);
  for (int j = 0; j < n; ++j) {
    r.positions[j] = {a * (j + 1) + dx[j], dy[j]};
    r.energies[j] = disorder.epsilon0 + de[j];
  }
  r.bond_deltas = std::move(dj);
  return r;
}

double dipole_coupling(Point a, Point b, double c3, double exponent) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double r2 = dx * dx + dy * dy;
  if (!(r2 > 0.0))
    throw std::domain_error("degenerate geometry: coincident spins");
  return c3 * std::pow(r2, -0.5 * exponent);
}

double nn_coupling_sigma(double sigma_x, double sigma_y, double lattice_period,
                         double c3) {
  if (!(lattice_period > 0.0))
    throw ConfigError("chain: lattice period must be positive");
  (void)sigma_y;
  const double a4 = lattice_period * lattice_period * lattice_period *
                    lattice_period;
  return 3.0 * (c3 / a4) * sigma_x;
}

HamiltonianMatrix build_hamiltonian(const SpinChainRealization& realization) {
  const auto& cfg = realization.config;
  cfg.validate();
  const int n = cfg.n_sites;
  if (static_cast<int>(realization.positions.size()) != n ||
      static_cast<int>(realization.energies.size()) != n ||
      static_cast<int>(realization.bond_deltas.size()) != n - 1)
    throw std::invalid_argument(
        "build_hamiltonian: realization arrays do not match N");

  HamiltonianMatrix h;
  h.entries = Eigen::MatrixXd::Zero(n, n);
  h.labels.assign(n, SiteRole::Chain);
  for (int j = 0; j < n; ++j) h.entries(j, j) = realization.energies[j];

  if (cfg.model == ChainModel::LongRange) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double jij = dipole_coupling(realization.positions[i],
                                           realization.positions[j], cfg.c3,
                                           cfg.exponent);
        h.entries(i, j) = jij;
        h.entries(j, i) = jij;
      }
  } else {
    const double j0 = cfg.coupling_j();
    for (int i = 0; i + 1 < n; ++i) {
      const double bond = j0 + realization.bond_deltas[i];
      h.entries(i, i + 1) = bond;
      h.entries(i + 1, i) = bond;
    }
  }
  return h;
}

HamiltonianMatrix extend_with_endpoints(const HamiltonianMatrix& chain,
                                        const EndpointParams& endpoints) {
  if (chain.has_endpoints())
    throw std::invalid_argument(
        "extend_with_endpoints: chain already has endpoints");
  const int n = chain.dimension();
  if (n < 1)
    throw std::invalid_argument("extend_with_endpoints: empty chain");

  HamiltonianMatrix h;
  h.entries = Eigen::MatrixXd::Zero(n + 2, n + 2);
  h.entries.block(1, 1, n, n) = chain.entries;
  h.entries(0, 0) = endpoints.epsilon_s;
  h.entries(n + 1, n + 1) = endpoints.epsilon_r;
  h.entries(0, 1) = endpoints.j_s;
  h.entries(1, 0) = endpoints.j_s;
  h.entries(n, n + 1) = endpoints.j_r;
  h.entries(n + 1, n) = endpoints.j_r;

  h.labels.reserve(n + 2);
  h.labels.push_back(SiteRole::Sender);
  h.labels.insert(h.labels.end(), chain.labels.begin(), chain.labels.end());
  h.labels.push_back(SiteRole::Receiver);
  return h;
}

}  // namespace spinchain
