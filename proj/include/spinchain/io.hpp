// io.hpp — run-configuration parsing and CSV emission for the CLI.
//
// Configurations are JSON objects with a flat key set. All quantities use
// the natural units of the chain: energies in J, lengths in a, times in
// 1/J. Unknown keys, type mismatches and out-of-range values are rejected
// with a diagnostic naming the offending key.
//
// CSV output is deterministic: fixed column order, '#' comment header, LF
// line endings, no timestamps, doubles printed with %.17g so that equal
// runs produce byte-identical files.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/ensemble.hpp"

namespace spinchain {

// Mirror of the configuration file. Optional fields keep protocol defaults
// when absent.
struct RunConfig {
  int n_sites = 100;                               // "N"
  ChainModel model = ChainModel::LongRange;        // "model"
  double lattice_period = 1.0;                     // "a"
  double c3 = 1.0;                                 // "C3"
  double exponent = 3.0;                           // "nu"
  double sigma_epsilon = 0.0;                      // "sigma_epsilon", in J
  double sigma_x = 0.0;                            // "sigma_x", in a
  double sigma_y = 0.0;                            // "sigma_y", in a
  std::optional<double> sigma_j;                   // "sigma_J", in J
  double epsilon0 = 0.0;                           // "epsilon0", in J
  std::uint64_t seed = 0;                          // "seed"
  Protocol protocol = Protocol::LocalizationOnly;  // "protocol"
  int n_realizations = 1000;                       // "n_realizations"
  double coupling_scale = kDefaultCouplingScale;   // "coupling_scale"
  std::optional<double> e_target;                  // "e_target", in J
  std::optional<EnergyTuning> tuning;              // "tuning"
  std::optional<double> horizon;                   // "horizon", in 1/J
  std::optional<double> sample_dt;                 // "sample_dt", in 1/J
  double gamma = 6.0;                              // "gamma"
  double beta_s = 2.3;                             // "beta_s"
  double beta_r = 3.6;                             // "beta_r"
  std::optional<double> tau;                       // "tau", in 1/J
  std::optional<double> dt;                        // "dt", in 1/J
  std::vector<int> chain_lengths;                  // "Ns"
  int workers = 0;                                 // "workers"
  std::string out_dir = ".";                       // "out"

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses a JSON configuration. Throws ConfigError with a single-line
// message naming the key on any syntax, type, range or unknown-key problem.
RunConfig parse_config(const std::string& text);

// Serializes a configuration so that parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// Reads a whole file; throws IoError on failure.
std::string read_file(const std::string& path);

// Writes a whole file; throws IoError on failure.
void write_file(const std::string& path, const std::string& content);

// Conversions into library types, applying the unit convention.
ChainConfig chain_config(const RunConfig& config);
DisorderSpec disorder_spec(const RunConfig& config);
ProtocolOptions protocol_options(const RunConfig& config);
EnsembleConfig ensemble_config(const RunConfig& config);

// Spectrum comparison table: closed-form versus numerical eigenvalues of
// the ordered long-range chain.
struct SpectrumTable {
  std::vector<int> k;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

// Boundary-support table for one chain realization.
struct BoundarySupportTable {
  std::vector<int> k;
  std::vector<double> energy;
  std::vector<double> support;
};

void emit_csv(const LocalizationProfile& profile, const std::string& path);
void emit_csv(const TransferTrace& trace, const std::string& path);
void emit_csv(const EnsembleSummary& summary, const std::string& path);
void emit_csv(const SpectrumTable& table, const std::string& path);
void emit_csv(const BoundarySupportTable& table, const std::string& path);

}  // namespace spinchain
