// ensemble.hpp — seeded disorder ensembles with deterministic parallel
// execution.
//
// Realizations are addressed by index, so work can be distributed over any
// number of worker threads while aggregation always runs in index order.
// Output is bitwise identical for every worker count.
#pragma once

#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/transfer.hpp"

namespace spinchain {

enum class Protocol { LocalizationOnly, Static, Stirap };

struct EnsembleConfig {
  ChainConfig chain;
  DisorderSpec disorder;
  int n_realizations = 1000;
  Protocol protocol = Protocol::LocalizationOnly;
  ProtocolOptions options;  // unset tuning resolves to FixedTarget here
  int workers = 0;          // 0 uses one worker per hardware thread

  // Throws ConfigError on out-of-range fields.
  void validate() const;
};

// Ensemble averages per eigenstate index k (ascending energy order).
// Standard errors are over realizations; they are zero for a single
// realization.
struct LocalizationProfile {
  int n_sites = 0;
  int n_realizations = 0;  // successful realizations entering the averages
  int failures = 0;        // degenerate-geometry draws that were excluded
  std::vector<double> mean_energy;
  std::vector<double> se_energy;
  std::vector<double> mean_xi;
  std::vector<double> se_xi;
  std::vector<double> mean_dn2;
  std::vector<double> se_dn2;
};

// Transfer figures of merit per chain length.
struct EnsembleSummary {
  Protocol protocol = Protocol::Static;
  std::vector<int> chain_lengths;
  std::vector<double> mean_pr;   // terminal receiver population
  std::vector<double> se_pr;
  std::vector<double> mean_tau;  // peak time (static) or pulse length
  std::vector<int> failures;
};

// Eigenstate-resolved localization statistics over the ensemble. Requires
// protocol == LocalizationOnly. Realizations that throw on degenerate
// geometry are excluded; more than 1% of them raises AccuracyError.
LocalizationProfile localization_sweep(const EnsembleConfig& config);

// Runs the configured transfer protocol over the ensemble for each chain
// length, with protocol parameters re-derived per length. Unset tuning
// resolves to FixedTarget. The failure policy matches localization_sweep.
EnsembleSummary transfer_sweep(const EnsembleConfig& config,
                               const std::vector<int>& chain_lengths);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// Least-squares line through (x, y) pairs; used to check the linear growth
// of transfer time with chain length.
LineFit transfer_time_fit(const std::vector<double>& chain_lengths,
                          const std::vector<double>& transfer_times);

// Runs body(i) for i in [0, n) on `workers` threads pulling indices from a
// shared counter. Exceptions are rethrown on the caller thread; when
// several realizations throw, the lowest index wins so the surfaced error
// does not depend on scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

// Resolves a worker-count hint: positive values pass through, zero maps to
// the hardware concurrency (at least 1).
int resolve_workers(int hint);

}  // namespace spinchain
