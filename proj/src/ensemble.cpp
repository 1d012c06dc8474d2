#include "spinchain/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "spinchain/errors.hpp"
#include "spinchain/spectral.hpp"

namespace spinchain {

namespace {

// Two-pass mean and standard error over the values selected by `keep`.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

template <typename Get>
MeanSe mean_se(int n, const std::vector<char>& keep, Get&& get) {
  double sum = 0.0;
  int m = 0;
  for (int i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    sum += get(i);
    ++m;
  }
  if (m == 0) return {};
  const double mean = sum / m;
  if (m == 1) return {mean, 0.0};
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    const double d = get(i) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (static_cast<double>(m) * (m - 1)))};
}

void check_failure_rate(int failures, int total) {
  if (failures * 100 > total)
    throw AccuracyError("ensemble: failure rate above 1% (" +
                        std::to_string(failures) + " of " +
                        std::to_string(total) + " realizations)");
}

}  // namespace

void EnsembleConfig::validate() const {
  chain.validate();
  disorder.validate();
  if (n_realizations < 1)
    throw ConfigError("ensemble: n_realizations must be at least 1");
  if (workers < 0) throw ConfigError("ensemble: workers must be >= 0");
}

int resolve_workers(int hint) {
  if (hint > 0) return hint;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (n <= 0) return;
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  int first_error_index = n;

  const auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

LocalizationProfile localization_sweep(const EnsembleConfig& config) {
  config.validate();
  if (config.protocol != Protocol::LocalizationOnly)
    throw std::invalid_argument(
        "localization_sweep: config selects a transfer protocol");

  const int n = config.chain.n_sites;
  const int reals = config.n_realizations;
  const double a = config.chain.lattice_period;

  struct Row {
    Eigen::VectorXd energy;
    Eigen::VectorXd xi;
    Eigen::VectorXd dn2;
  };
  std::vector<Row> rows(reals);
  std::vector<char> ok(reals, 0);

  parallel_for(reals, resolve_workers(config.workers), [&](int r) {
    SpinChainRealization real;
    try {
      real = sample_realization(config.chain, config.disorder, r);
    } catch (const std::domain_error&) {
      return;
    }
    EigenSystem es;
    try {
      es = eigendecompose(build_hamiltonian(real));
    } catch (const std::domain_error&) {
      return;
    }
    Row& row = rows[r];
    row.energy = es.eigenvalues;
    row.xi.resize(n);
    row.dn2.resize(n);
    for (int k = 0; k < n; ++k) {
      auto v = es.eigenvectors.col(k);
      row.xi[k] = localization_length(v, a).xi;
      row.dn2[k] = number_variance(v);
    }
    ok[r] = 1;
  });

  LocalizationProfile profile;
  profile.n_sites = n;
  for (int r = 0; r < reals; ++r) profile.failures += ok[r] ? 0 : 1;
  profile.n_realizations = reals - profile.failures;
  check_failure_rate(profile.failures, reals);

  profile.mean_energy.resize(n);
  profile.se_energy.resize(n);
  profile.mean_xi.resize(n);
  profile.se_xi.resize(n);
  profile.mean_dn2.resize(n);
  profile.se_dn2.resize(n);
  for (int k = 0; k < n; ++k) {
    const MeanSe e =
        mean_se(reals, ok, [&](int r) { return rows[r].energy[k]; });
    const MeanSe x = mean_se(reals, ok, [&](int r) { return rows[r].xi[k]; });
    const MeanSe d =
        mean_se(reals, ok, [&](int r) { return rows[r].dn2[k]; });
    profile.mean_energy[k] = e.mean;
    profile.se_energy[k] = e.se;
    profile.mean_xi[k] = x.mean;
    profile.se_xi[k] = x.se;
    profile.mean_dn2[k] = d.mean;
    profile.se_dn2[k] = d.se;
  }
  return profile;
}

EnsembleSummary transfer_sweep(const EnsembleConfig& config,
                               const std::vector<int>& chain_lengths) {
  config.validate();
  if (config.protocol == Protocol::LocalizationOnly)
    throw std::invalid_argument(
        "transfer_sweep: config selects no transfer protocol");
  if (chain_lengths.empty())
    throw std::invalid_argument("transfer_sweep: no chain lengths given");

  ProtocolOptions options = config.options;
  if (!options.tuning) options.tuning = EnergyTuning::FixedTarget;

  const int reals = config.n_realizations;
  EnsembleSummary summary;
  summary.protocol = config.protocol;

  for (const int n : chain_lengths) {
    ChainConfig cc = config.chain;
    cc.n_sites = n;
    const StaticProtocolParams static_params =
        config.protocol == Protocol::Static
            ? make_static_params(cc, options)
            : StaticProtocolParams{};
    const StirapParams stirap_params = config.protocol == Protocol::Stirap
                                           ? make_stirap_params(cc, options)
                                           : StirapParams{};

    std::vector<double> pr(reals, 0.0), tau(reals, 0.0);
    std::vector<char> ok(reals, 0);

    parallel_for(reals, resolve_workers(config.workers), [&](int r) {
      SpinChainRealization real;
      try {
        real = sample_realization(cc, config.disorder, r);
      } catch (const std::domain_error&) {
        return;
      }
      TransferTrace trace;
      try {
        trace = config.protocol == Protocol::Static
                    ? run_static_protocol(real, static_params)
                    : run_stirap_protocol(real, stirap_params);
      } catch (const std::domain_error&) {
        return;
      }
      pr[r] = trace.p_receiver.back();
      tau[r] = trace.tau_used;
      ok[r] = 1;
    });

    int failures = 0;
    for (int r = 0; r < reals; ++r) failures += ok[r] ? 0 : 1;
    check_failure_rate(failures, reals);

    const MeanSe p = mean_se(reals, ok, [&](int r) { return pr[r]; });
    const MeanSe t = mean_se(reals, ok, [&](int r) { return tau[r]; });
    summary.chain_lengths.push_back(n);
    summary.mean_pr.push_back(p.mean);
    summary.se_pr.push_back(p.se);
    summary.mean_tau.push_back(t.mean);
    summary.failures.push_back(failures);
  }
  return summary;
}

LineFit transfer_time_fit(const std::vector<double>& chain_lengths,
                          const std::vector<double>& transfer_times) {
  const std::size_t n = chain_lengths.size();
  if (n < 2 || transfer_times.size() != n)
    throw std::invalid_argument(
        "transfer_time_fit: need at least 2 matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += chain_lengths[i];
    sy += transfer_times[i];
    sxx += chain_lengths[i] * chain_lengths[i];
    sxy += chain_lengths[i] * transfer_times[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0)
    throw std::invalid_argument("transfer_time_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res =
        transfer_times[i] - (fit.slope * chain_lengths[i] + fit.intercept);
    ss += res * res;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace spinchain
