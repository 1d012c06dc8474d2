// spinchain_cli.cpp — command-line front end for the spin-chain experiments.
//
// Subcommands:
//   spectrum          closed-form vs numerical spectrum of the ordered chain
//   localization      per-eigenstate localization statistics over an ensemble
//   boundary-support  end-site amplitudes of one realization's eigenstates
//   transfer-static   one static-coupling transfer run
//   transfer-stirap   one pulsed-coupling transfer run
//   ensemble          transfer figures of merit versus chain length
//
// Exit codes: 0 success, 2 configuration error, 3 accuracy error, 4 I/O
// error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "spinchain/ensemble.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/io.hpp"
#include "spinchain/spectral.hpp"
#include "spinchain/transfer.hpp"

namespace {

using namespace spinchain;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
  bool quiet = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "JSON configuration file");
  sub->add_option("--seed", args.seed, "override the ensemble base seed");
  sub->add_option("--out", args.out, "override the output directory");
  sub->add_option("--workers", args.workers,
                  "override the worker thread count (0 = hardware)");
  sub->add_flag("--quiet", args.quiet, "suppress progress output");
}

RunConfig load(const CommonArgs& args) {
  RunConfig rc;
  if (!args.config_path.empty())
    rc = parse_config(read_file(args.config_path));
  if (args.seed) rc.seed = *args.seed;
  if (args.out) rc.out_dir = *args.out;
  if (args.workers) {
    if (*args.workers < 0) throw ConfigError("workers: must be >= 0");
    rc.workers = *args.workers;
  }
  return rc;
}

std::string out_path(const RunConfig& rc, const char* name) {
  namespace fs = std::filesystem;
  const fs::path dir(rc.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return (dir / name).string();
}

// The CSV layer states energies in J, lengths in a and times in 1/J; the
// library works in absolute units, so results are rescaled before writing.
LocalizationProfile in_natural_units(LocalizationProfile p, double j,
                                     double a) {
  for (auto* v : {&p.mean_energy, &p.se_energy})
    for (double& x : *v) x /= j;
  for (auto* v : {&p.mean_xi, &p.se_xi})
    for (double& x : *v) x /= a;
  return p;
}

TransferTrace in_natural_units(TransferTrace t, double j) {
  for (double& x : t.times) x *= j;
  t.tau_used *= j;
  return t;
}

EnsembleSummary in_natural_units(EnsembleSummary s, double j) {
  for (double& x : s.mean_tau) x *= j;
  return s;
}

void run_spectrum(const CommonArgs& args) {
  const RunConfig rc = load(args);
  const ChainConfig cc = chain_config(rc);
  const double j = cc.coupling_j();
  const int n = cc.n_sites;

  std::vector<double> analytic(n);
  if (cc.model == ChainModel::LongRange) {
    analytic = ordered_long_range_spectrum(n, j);
  } else {
    const double pi = 3.14159265358979323846;
    for (int k = 1; k <= n; ++k)
      analytic[k - 1] = 2.0 * j * std::cos(pi * k / (n + 1));
  }

  const SpinChainRealization ordered =
      sample_realization(cc, DisorderSpec{}, 0);
  const EigenSystem es = eigendecompose(build_hamiltonian(ordered));

  SpectrumTable table;
  double max_dev = 0.0;
  for (int k = 1; k <= n; ++k) {
    table.k.push_back(k);
    table.analytic.push_back(analytic[k - 1] / j);
    const double numeric = es.eigenvalues[n - k];  // pair descending orders
    table.numeric.push_back(numeric / j);
    max_dev = std::max(max_dev, std::abs(analytic[k - 1] - numeric) / j);
  }
  const std::string path = out_path(rc, "spectrum.csv");
  emit_csv(table, path);
  if (!args.quiet) {
    std::cout << "spectrum: N=" << n << " max |dE|=" << max_dev << " J\n";
    std::cout << "wrote " << path << "\n";
  }
}

void run_localization(const CommonArgs& args) {
  RunConfig rc = load(args);
  rc.protocol = Protocol::LocalizationOnly;
  const EnsembleConfig ec = ensemble_config(rc);
  const LocalizationProfile profile = localization_sweep(ec);
  const std::string path = out_path(rc, "localization.csv");
  emit_csv(in_natural_units(profile, ec.chain.coupling_j(),
                            ec.chain.lattice_period),
           path);
  if (!args.quiet) {
    std::cout << "localization: N=" << profile.n_sites
              << " realizations=" << profile.n_realizations
              << " failures=" << profile.failures << "\n";
    std::cout << "wrote " << path << "\n";
  }
}

void run_boundary_support(const CommonArgs& args) {
  const RunConfig rc = load(args);
  const ChainConfig cc = chain_config(rc);
  const double j = cc.coupling_j();
  const SpinChainRealization real =
      sample_realization(cc, disorder_spec(rc), 0);
  const EigenSystem es = eigendecompose(build_hamiltonian(real));

  BoundarySupportTable table;
  for (int k = 0; k < es.dimension(); ++k) {
    table.k.push_back(k + 1);
    table.energy.push_back(es.eigenvalues[k] / j);
    table.support.push_back(boundary_support(es.eigenvectors.col(k)));
  }
  const std::string path = out_path(rc, "boundary_support.csv");
  emit_csv(table, path);
  if (!args.quiet) std::cout << "wrote " << path << "\n";
}

void run_transfer_static(const CommonArgs& args) {
  const RunConfig rc = load(args);
  const ChainConfig cc = chain_config(rc);
  ProtocolOptions options = protocol_options(rc);
  if (!options.tuning) options.tuning = EnergyTuning::SelectedEigenstate;
  const StaticProtocolParams params = make_static_params(cc, options);
  const SpinChainRealization real =
      sample_realization(cc, disorder_spec(rc), 0);
  const TransferTrace trace = run_static_protocol(real, params);
  const double j = cc.coupling_j();
  const std::string path = out_path(rc, "transfer_static.csv");
  emit_csv(in_natural_units(trace, j), path);
  if (!args.quiet) {
    if (trace.no_peak)
      std::cout << "static transfer: no receiver peak before the horizon\n";
    else
      std::cout << "static transfer: t*J=" << trace.tau_used * j
                << " P_r=" << trace.p_receiver.back()
                << " k=" << trace.k_selected + 1 << "\n";
    std::cout << "wrote " << path << "\n";
  }
}

void run_transfer_stirap(const CommonArgs& args) {
  const RunConfig rc = load(args);
  const ChainConfig cc = chain_config(rc);
  ProtocolOptions options = protocol_options(rc);
  if (!options.tuning) options.tuning = EnergyTuning::SelectedEigenstate;
  const StirapParams params = make_stirap_params(cc, options);
  const SpinChainRealization real =
      sample_realization(cc, disorder_spec(rc), 0);
  const TransferTrace trace = run_stirap_protocol(real, params);
  const double j = cc.coupling_j();
  double max_pc = 0.0;
  for (const double p : trace.p_chain) max_pc = std::max(max_pc, p);
  const std::string path = out_path(rc, "transfer_stirap.csv");
  emit_csv(in_natural_units(trace, j), path);
  if (!args.quiet) {
    std::cout << "stirap transfer: P_r(tau)=" << trace.p_receiver.back()
              << " max P_c=" << max_pc << " area=" << trace.pulse_area
              << " norm drift=" << trace.norm_drift << "\n";
    std::cout << "wrote " << path << "\n";
  }
}

void run_ensemble(const CommonArgs& args) {
  const RunConfig rc = load(args);
  if (rc.protocol == Protocol::LocalizationOnly)
    throw ConfigError(
        "config: protocol: ensemble requires \"static\" or \"stirap\"");
  if (rc.chain_lengths.empty())
    throw ConfigError("config: Ns: required for the ensemble subcommand");
  const EnsembleConfig ec = ensemble_config(rc);
  const EnsembleSummary summary = transfer_sweep(ec, rc.chain_lengths);
  const double j = ec.chain.coupling_j();
  const std::string path = out_path(rc, "ensemble.csv");
  emit_csv(in_natural_units(summary, j), path);
  if (!args.quiet) {
    for (std::size_t i = 0; i < summary.chain_lengths.size(); ++i)
      std::cout << "N=" << summary.chain_lengths[i]
                << " mean_Pr=" << summary.mean_pr[i]
                << " mean_tau*J=" << summary.mean_tau[i] * j
                << " failures=" << summary.failures[i] << "\n";
    std::cout << "wrote " << path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Localization and excitation transfer in disordered spin chains"};
  app.require_subcommand(1);

  CommonArgs args;
  add_common(app.add_subcommand(
                 "spectrum", "ordered-chain spectrum, closed form vs numeric"),
             args);
  add_common(app.add_subcommand(
                 "localization", "ensemble localization statistics"),
             args);
  add_common(app.add_subcommand("boundary-support",
                                "end-site support of chain eigenstates"),
             args);
  add_common(
      app.add_subcommand("transfer-static", "static-coupling transfer run"),
      args);
  add_common(
      app.add_subcommand("transfer-stirap", "pulsed-coupling transfer run"),
      args);
  add_common(app.add_subcommand("ensemble",
                                "transfer figures of merit vs chain length"),
             args);

  try {
    app.parse(argc, argv);
    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "spectrum") run_spectrum(args);
    else if (name == "localization") run_localization(args);
    else if (name == "boundary-support") run_boundary_support(args);
    else if (name == "transfer-static") run_transfer_static(args);
    else if (name == "transfer-stirap") run_transfer_stirap(args);
    else if (name == "ensemble") run_ensemble(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const spinchain::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const spinchain::AccuracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const spinchain::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
