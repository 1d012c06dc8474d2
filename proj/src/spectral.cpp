#include "spinchain/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "spinchain/errors.hpp"

namespace spinchain {

EigenSystem eigendecompose(const HamiltonianMatrix& h) {
  const auto& m = h.entries;
  const int n = static_cast<int>(m.rows());
  if (n < 1 || m.cols() != n)
    throw std::invalid_argument("eigendecompose: matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i))
        throw std::invalid_argument("eigendecompose: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw AccuracyError("eigendecompose: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> ordered_long_range_spectrum(int n_sites, double j) {
  if (n_sites < 2)
    throw std::invalid_argument(
        "ordered_long_range_spectrum: need at least 2 sites");
  const double pi = 3.14159265358979323846;
  std::vector<double> e(n_sites);
  for (int k = 1; k <= n_sites; ++k) {
    double sum = 0.0;
    for (int m = 1; m <= n_sites; ++m) {
      const double m3 = static_cast<double>(m) * m * m;
      sum += std::cos(pi * k * m / (n_sites + 1)) / m3;
    }
    e[k - 1] = 2.0 * j * sum;
  }
  return e;
}

LocalizationFit localization_length(Eigen::Ref<const Eigen::VectorXd> v,
                                    double lattice_period) {
  const int n = static_cast<int>(v.size());
  if (n < 3)
    throw std::invalid_argument("localization_length: need at least 3 sites");
  if (!(lattice_period > 0.0))
    throw std::invalid_argument(
        "localization_length: lattice period must be positive");

  int peak = 0;
  double vmax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(v[i]);
    if (m > vmax) {
      vmax = m;
      peak = i;
    }
  }
  if (vmax == 0.0)
    throw std::invalid_argument("localization_length: null vector");

  const double a = lattice_period;
  const double mu = a * (peak + 1);
  const double floor = 1e-12 * vmax;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(v[i]);
    if (m <= floor) continue;
    const double x = std::abs(a * (i + 1) - mu);
    const double y = std::log(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }

  const double xi_max = a * n;
  const double denom = count * sxx - sx * sx;
  if (count < 2 || denom <= 0.0) {
    // Only the peak site carries weight above the amplitude floor, so the
    // envelope drops by at least the floor ratio within one lattice spacing.
    return {a / std::log(1e12), mu, false};
  }
  const double slope = (count * sxy - sx * sy) / denom;
  if (slope >= -1.0 / (10.0 * xi_max)) return {xi_max, mu, true};
  return {-1.0 / slope, mu, false};
}

double number_variance(Eigen::Ref<const Eigen::VectorXd> v) {
  const int n = static_cast<int>(v.size());
  if (n < 1)
    throw std::invalid_argument("number_variance: empty vector");
  const int half = n / 2;
  double p = 0.0;
  for (int i = 0; i < half; ++i) p += v[i] * v[i];
  return p - p * p;
}

double expected_number_variance(double xi, int n_sites,
                                double lattice_period) {
  if (!(xi > 0.0))
    throw std::invalid_argument(
        "expected_number_variance: xi must be positive");
  if (n_sites < 1)
    throw std::invalid_argument(
        "expected_number_variance: need at least 1 site");
  if (!(lattice_period > 0.0))
    throw std::invalid_argument(
        "expected_number_variance: lattice period must be positive");

  const int half = n_sites / 2;
  double acc = 0.0;
  for (int m = 1; m <= n_sites; ++m) {
    double w = 0.0, wl = 0.0;
    for (int i = 1; i <= n_sites; ++i) {
      const double q =
          std::exp(-2.0 * lattice_period * std::abs(i - m) / xi);
      w += q;
      if (i <= half) wl += q;
    }
    const double p = wl / w;
    acc += p - p * p;
  }
  return acc / n_sites;
}

double ipr(Eigen::Ref<const Eigen::VectorXd> v) {
  if (v.size() < 1) throw std::invalid_argument("ipr: empty vector");
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double p = v[i] * v[i];
    s += p * p;
  }
  return s;
}

double boundary_support(Eigen::Ref<const Eigen::VectorXd> v) {
  if (v.size() < 2)
    throw std::invalid_argument("boundary_support: need at least 2 sites");
  return std::abs(v[0] * v[v.size() - 1]);
}

int select_target_state(const EigenSystem& es, double e_target) {
  const int n = es.dimension();
  if (n < 1) throw std::invalid_argument("select_target_state: empty system");
  int best = 0;
  double best_dist = std::abs(es.eigenvalues[0] - e_target);
  double best_support = boundary_support(es.eigenvectors.col(0));
  for (int k = 1; k < n; ++k) {
    const double d = std::abs(es.eigenvalues[k] - e_target);
    if (d > best_dist) continue;
    const double support = boundary_support(es.eigenvectors.col(k));
    // Exact distance ties go to the state that couples best to both ends.
    if (d < best_dist || support > best_support) {
      best_dist = d;
      best = k;
      best_support = support;
    }
  }
  return best;
}

CouplingRates coupling_rates(Eigen::Ref<const Eigen::VectorXd> v, double j_s,
                             double j_r) {
  if (v.size() < 2)
    throw std::invalid_argument("coupling_rates: need at least 2 sites");
  return {j_s * v[0], j_r * v[v.size() - 1]};
}

std::vector<LocalizationRecord> analyze_states(const EigenSystem& es,
                                               double lattice_period) {
  const int n = es.dimension();
  std::vector<LocalizationRecord> records(n);
  for (int k = 0; k < n; ++k) {
    auto v = es.eigenvectors.col(k);
    const LocalizationFit fit = localization_length(v, lattice_period);
    auto& rec = records[k];
    rec.k = k + 1;
    rec.energy = es.eigenvalues[k];
    rec.xi = fit.xi;
    rec.mu = fit.mu;
    rec.delocalized = fit.delocalized;
    rec.number_variance = number_variance(v);
    rec.ipr = ipr(v);
    rec.boundary_support = boundary_support(v);
  }
  return records;
}

}  // namespace spinchain
