#include "spinchain/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number())
    throw ConfigError("config: " + key + ": expected a number");
  return v.get<double>();
}

double as_positive(const json& v, const std::string& key) {
  const double x = as_number(v, key);
  if (!(x > 0.0)) throw ConfigError("config: " + key + ": must be positive");
  return x;
}

double as_non_negative(const json& v, const std::string& key) {
  const double x = as_number(v, key);
  if (x < 0.0) throw ConfigError("config: " + key + ": must be >= 0");
  return x;
}

int as_int_at_least(const json& v, const std::string& key, int lo) {
  if (!v.is_number_integer())
    throw ConfigError("config: " + key + ": expected an integer");
  const auto x = v.get<long long>();
  if (x < lo)
    throw ConfigError("config: " + key + ": must be at least " +
                      std::to_string(lo));
  if (x > 1000000000)
    throw ConfigError("config: " + key + ": out of range");
  return static_cast<int>(x);
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string())
    throw ConfigError("config: " + key + ": expected a string");
  return v.get<std::string>();
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("config: top level must be a JSON object");

  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "N") {
      c.n_sites = as_int_at_least(value, key, 2);
    } else if (key == "model") {
      const std::string s = as_string(value, key);
      if (s == "long_range")
        c.model = ChainModel::LongRange;
      else if (s == "nearest_neighbor")
        c.model = ChainModel::NearestNeighbor;
      else
        throw ConfigError(
            "config: model: expected \"long_range\" or \"nearest_neighbor\"");
    } else if (key == "a") {
      c.lattice_period = as_positive(value, key);
    } else if (key == "C3") {
      c.c3 = as_positive(value, key);
    } else if (key == "nu") {
      c.exponent = as_positive(value, key);
    } else if (key == "sigma_epsilon") {
      c.sigma_epsilon = as_non_negative(value, key);
    } else if (key == "sigma_x") {
      c.sigma_x = as_non_negative(value, key);
    } else if (key == "sigma_y") {
      c.sigma_y = as_non_negative(value, key);
    } else if (key == "sigma_J") {
      c.sigma_j = as_non_negative(value, key);
    } else if (key == "epsilon0") {
      c.epsilon0 = as_number(value, key);
    } else if (key == "seed") {
      if (!value.is_number_integer() ||
          (value.is_number_integer() && !value.is_number_unsigned() &&
           value.get<long long>() < 0))
        throw ConfigError("config: seed: expected a non-negative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "protocol") {
      const std::string s = as_string(value, key);
      if (s == "localization")
        c.protocol = Protocol::LocalizationOnly;
      else if (s == "static")
        c.protocol = Protocol::Static;
      else if (s == "stirap")
        c.protocol = Protocol::Stirap;
      else
        throw ConfigError(
            "config: protocol: expected \"localization\", \"static\" or "
            "\"stirap\"");
    } else if (key == "n_realizations") {
      c.n_realizations = as_int_at_least(value, key, 1);
    } else if (key == "coupling_scale") {
      c.coupling_scale = as_positive(value, key);
    } else if (key == "e_target") {
      c.e_target = as_number(value, key);
    } else if (key == "tuning") {
      const std::string s = as_string(value, key);
      if (s == "eigenstate")
        c.tuning = EnergyTuning::SelectedEigenstate;
      else if (s == "fixed_target")
        c.tuning = EnergyTuning::FixedTarget;
      else
        throw ConfigError(
            "config: tuning: expected \"eigenstate\" or \"fixed_target\"");
    } else if (key == "horizon") {
      c.horizon = as_positive(value, key);
    } else if (key == "sample_dt") {
      c.sample_dt = as_positive(value, key);
    } else if (key == "gamma") {
      c.gamma = as_positive(value, key);
    } else if (key == "beta_s") {
      c.beta_s = as_number(value, key);
    } else if (key == "beta_r") {
      c.beta_r = as_number(value, key);
    } else if (key == "tau") {
      c.tau = as_positive(value, key);
    } else if (key == "dt") {
      c.dt = as_positive(value, key);
    } else if (key == "Ns") {
      if (!value.is_array() || value.empty())
        throw ConfigError("config: Ns: expected a non-empty array");
      c.chain_lengths.clear();
      for (const auto& e : value)
        c.chain_lengths.push_back(as_int_at_least(e, "Ns", 2));
    } else if (key == "workers") {
      c.workers = as_int_at_least(value, key, 0);
    } else if (key == "out") {
      c.out_dir = as_string(value, key);
    } else {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["N"] = c.n_sites;
  j["model"] = c.model == ChainModel::LongRange ? "long_range"
                                                : "nearest_neighbor";
  j["a"] = c.lattice_period;
  j["C3"] = c.c3;
  j["nu"] = c.exponent;
  j["sigma_epsilon"] = c.sigma_epsilon;
  j["sigma_x"] = c.sigma_x;
  j["sigma_y"] = c.sigma_y;
  if (c.sigma_j) j["sigma_J"] = *c.sigma_j;
  j["epsilon0"] = c.epsilon0;
  j["seed"] = c.seed;
  switch (c.protocol) {
    case Protocol::LocalizationOnly: j["protocol"] = "localization"; break;
    case Protocol::Static: j["protocol"] = "static"; break;
    case Protocol::Stirap: j["protocol"] = "stirap"; break;
  }
  j["n_realizations"] = c.n_realizations;
  j["coupling_scale"] = c.coupling_scale;
  if (c.e_target) j["e_target"] = *c.e_target;
  if (c.tuning)
    j["tuning"] = *c.tuning == EnergyTuning::SelectedEigenstate
                      ? "eigenstate"
                      : "fixed_target";
  if (c.horizon) j["horizon"] = *c.horizon;
  if (c.sample_dt) j["sample_dt"] = *c.sample_dt;
  j["gamma"] = c.gamma;
  j["beta_s"] = c.beta_s;
  j["beta_r"] = c.beta_r;
  if (c.tau) j["tau"] = *c.tau;
  if (c.dt) j["dt"] = *c.dt;
  if (!c.chain_lengths.empty()) j["Ns"] = c.chain_lengths;
  j["workers"] = c.workers;
  j["out"] = c.out_dir;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out.good()) throw IoError("cannot write " + path);
}

ChainConfig chain_config(const RunConfig& c) {
  ChainConfig cc;
  cc.n_sites = c.n_sites;
  cc.lattice_period = c.lattice_period;
  cc.c3 = c.c3;
  cc.exponent = c.exponent;
  cc.model = c.model;
  cc.validate();
  return cc;
}

DisorderSpec disorder_spec(const RunConfig& c) {
  const ChainConfig cc = chain_config(c);
  const double j = cc.coupling_j();
  const double a = cc.lattice_period;
  DisorderSpec d;
  d.sigma_epsilon = c.sigma_epsilon * j;
  d.sigma_x = c.sigma_x * a;
  d.sigma_y = c.sigma_y * a;
  d.epsilon0 = c.epsilon0 * j;
  d.base_seed = c.seed;
  if (c.sigma_j) d.sigma_j_override = *c.sigma_j * j;
  d.validate();
  return d;
}

ProtocolOptions protocol_options(const RunConfig& c) {
  const ChainConfig cc = chain_config(c);
  const double j = cc.coupling_j();
  ProtocolOptions o;
  o.coupling_scale = c.coupling_scale;
  if (c.e_target) o.e_target = *c.e_target * j;
  o.tuning = c.tuning;
  o.gamma = c.gamma;
  o.beta_s = c.beta_s;
  o.beta_r = c.beta_r;
  if (c.tau) o.tau = *c.tau / j;
  if (c.dt) o.dt = *c.dt / j;
  if (c.horizon) o.horizon = *c.horizon / j;
  if (c.sample_dt) o.sample_dt = *c.sample_dt / j;
  return o;
}

EnsembleConfig ensemble_config(const RunConfig& c) {
  EnsembleConfig e;
  e.chain = chain_config(c);
  e.disorder = disorder_spec(c);
  e.n_realizations = c.n_realizations;
  e.protocol = c.protocol;
  e.options = protocol_options(c);
  e.workers = c.workers;
  e.validate();
  return e;
}

void emit_csv(const LocalizationProfile& profile, const std::string& path) {
  std::string out;
  out += "# localization profile: per-eigenstate ensemble averages\n";
  out += "# units: energy in J, length in a\n";
  out += "# N=" + std::to_string(profile.n_sites) +
         " realizations=" + std::to_string(profile.n_realizations) +
         " failures=" + std::to_string(profile.failures) + "\n";
  out += "k,mean_E,mean_xi,mean_dn2,se_E,se_xi,se_dn2\n";
  for (int k = 0; k < profile.n_sites; ++k) {
    out += std::to_string(k + 1);
    out += ',';
    out += fmt17(profile.mean_energy[k]);
    out += ',';
    out += fmt17(profile.mean_xi[k]);
    out += ',';
    out += fmt17(profile.mean_dn2[k]);
    out += ',';
    out += fmt17(profile.se_energy[k]);
    out += ',';
    out += fmt17(profile.se_xi[k]);
    out += ',';
    out += fmt17(profile.se_dn2[k]);
    out += '\n';
  }
  write_file(path, out);
}

void emit_csv(const TransferTrace& trace, const std::string& path) {
  std::string out;
  out += "# transfer trace\n";
  out += "# units: time in 1/J\n";
  out += "# tau_used=" + fmt17(trace.tau_used) +
         " k_selected=" + std::to_string(trace.k_selected + 1) +
         " pulse_area=" + fmt17(trace.pulse_area) +
         " norm_drift=" + fmt17(trace.norm_drift) +
         " no_peak=" + std::to_string(trace.no_peak ? 1 : 0) + "\n";
  out += "t,P_s,P_c,P_r\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out += fmt17(trace.times[i]);
    out += ',';
    out += fmt17(trace.p_sender[i]);
    out += ',';
    out += fmt17(trace.p_chain[i]);
    out += ',';
    out += fmt17(trace.p_receiver[i]);
    out += '\n';
  }
  write_file(path, out);
}

void emit_csv(const EnsembleSummary& summary, const std::string& path) {
  std::string out;
  out += "# transfer ensemble summary (protocol=";
  out += summary.protocol == Protocol::Stirap ? "stirap" : "static";
  out += ")\n";
  out += "# units: time in 1/J\n";
  out += "N,mean_Pr,se_Pr,mean_tau,failures\n";
  for (std::size_t i = 0; i < summary.chain_lengths.size(); ++i) {
    out += std::to_string(summary.chain_lengths[i]);
    out += ',';
    out += fmt17(summary.mean_pr[i]);
    out += ',';
    out += fmt17(summary.se_pr[i]);
    out += ',';
    out += fmt17(summary.mean_tau[i]);
    out += ',';
    out += std::to_string(summary.failures[i]);
    out += '\n';
  }
  write_file(path, out);
}

void emit_csv(const SpectrumTable& table, const std::string& path) {
  std::string out;
  out += "# ordered long-range spectrum: closed form vs numerical\n";
  out += "# units: energy in J\n";
  out += "k,E_analytic,E_numeric\n";
  for (std::size_t i = 0; i < table.k.size(); ++i) {
    out += std::to_string(table.k[i]);
    out += ',';
    out += fmt17(table.analytic[i]);
    out += ',';
    out += fmt17(table.numeric[i]);
    out += '\n';
  }
  write_file(path, out);
}

void emit_csv(const BoundarySupportTable& table, const std::string& path) {
  std::string out;
  out += "# per-eigenstate boundary support |v_1 v_N|\n";
  out += "# units: energy in J\n";
  out += "k,E,boundary_support\n";
  for (std::size_t i = 0; i < table.k.size(); ++i) {
    out += std::to_string(table.k[i]);
    out += ',';
    out += fmt17(table.energy[i]);
    out += ',';
    out += fmt17(table.support[i]);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace spinchain
