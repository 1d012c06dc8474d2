#include "spinchain/transfer.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

constexpr double kPeakFloor = 1e-4;
constexpr double kDriftTol = 1e-8;
constexpr int kMaxHalvings = 6;
constexpr std::size_t kMaxInteriorSamples = 10000;

double default_target(const ChainConfig& config) {
  const double j = config.coupling_j();
  return config.model == ChainModel::LongRange ? kLongRangeTargetOverJ * j
                                               : 0.0;
}

FirstPeak scan_first_peak(const std::vector<double>& times,
                          const std::vector<double>& values, double floor) {
  const std::size_t n = times.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1] &&
        values[i] > floor) {
      const double y0 = values[i - 1];
      const double y1 = values[i];
      const double y2 = values[i + 1];
      // Parabola through the three bracketing samples; the vertex offset is
      // at most half a sample in magnitude for a strict maximum.
      const double den = y0 - 2.0 * y1 + y2;
      const double s = 0.5 * (y0 - y2) / den;
      const double step = times[i] - times[i - 1];
      const double t = times[i] + s * step;
      const double v = y1 + 0.5 * (y2 - y0) * s + 0.5 * den * s * s;
      return {t, v, true};
    }
  }
  return {times.back(), values.back(), false};
}

// Keeps the first and last samples and at most kMaxInteriorSamples interior
// ones, evenly strided.
template <typename Push>
void decimated_indices(std::size_t n, Push&& push) {
  push(0);
  if (n <= 1) return;
  const std::size_t interior = n - 2;
  const std::size_t stride =
      interior > kMaxInteriorSamples
          ? (interior + kMaxInteriorSamples - 1) / kMaxInteriorSamples
          : 1;
  for (std::size_t i = stride; i + 1 < n; i += stride) push(i);
  push(n - 1);
}

void decimate_trace(TransferTrace& trace) {
  const std::size_t n = trace.times.size();
  if (n <= kMaxInteriorSamples + 2) return;
  TransferTrace out;
  out.norm_drift = trace.norm_drift;
  out.tau_used = trace.tau_used;
  out.k_selected = trace.k_selected;
  out.pulse_area = trace.pulse_area;
  out.no_peak = trace.no_peak;
  decimated_indices(n, [&](std::size_t i) {
    out.times.push_back(trace.times[i]);
    out.p_sender.push_back(trace.p_sender[i]);
    out.p_chain.push_back(trace.p_chain[i]);
    out.p_receiver.push_back(trace.p_receiver[i]);
  });
  trace = std::move(out);
}

struct Populations {
  double sender = 0.0;
  double chain = 0.0;
  double receiver = 0.0;
};

Populations split_populations(const Eigen::VectorXcd& psi,
                              const std::vector<SiteRole>& labels) {
  Populations p;
  for (int i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi[i]);
    switch (labels[i]) {
      case SiteRole::Sender: p.sender += w; break;
      case SiteRole::Chain: p.chain += w; break;
      case SiteRole::Receiver: p.receiver += w; break;
    }
  }
  return p;
}

}  // namespace

void StaticProtocolParams::validate() const {
  if (!(j_coupling >= 0.0))
    throw ConfigError("static protocol: coupling must be nonnegative");
  if (!(horizon > 0.0))
    throw ConfigError("static protocol: horizon must be positive");
  if (!(sample_dt > 0.0))
    throw ConfigError("static protocol: sample_dt must be positive");
  if (sample_dt > horizon)
    throw ConfigError("static protocol: sample_dt must not exceed horizon");
}

void StirapParams::validate() const {
  if (!(j_max >= 0.0))
    throw ConfigError("stirap: pulse amplitude must be nonnegative");
  if (!(gamma > 0.0)) throw ConfigError("stirap: gamma must be positive");
  if (!(tau > 0.0)) throw ConfigError("stirap: tau must be positive");
  if (!(dt > 0.0)) throw ConfigError("stirap: dt must be positive");
  if (dt > tau / 1000.0)
    throw ConfigError("stirap: dt must not exceed tau/1000");
}

StaticProtocolParams make_static_params(const ChainConfig& config,
                                        const ProtocolOptions& options) {
  config.validate();
  if (!(options.coupling_scale > 0.0))
    throw ConfigError("protocol: coupling_scale must be positive");
  const double j = config.coupling_j();
  const int n = config.n_sites;
  StaticProtocolParams p;
  p.j_coupling = options.coupling_scale * j / std::sqrt(static_cast<double>(n));
  p.e_target = options.e_target ? *options.e_target : default_target(config);
  p.horizon = options.horizon ? *options.horizon : 2.0 * (3.2 * n + 2.3) / j;
  p.sample_dt = options.sample_dt ? *options.sample_dt : 0.1 / j;
  p.tuning = options.tuning.value_or(EnergyTuning::SelectedEigenstate);
  p.validate();
  return p;
}

StirapParams make_stirap_params(const ChainConfig& config,
                                const ProtocolOptions& options) {
  config.validate();
  if (!(options.coupling_scale > 0.0))
    throw ConfigError("protocol: coupling_scale must be positive");
  const double j = config.coupling_j();
  const int n = config.n_sites;
  StirapParams p;
  p.j_max = options.coupling_scale * j / std::sqrt(static_cast<double>(n));
  p.gamma = options.gamma;
  p.beta_s = options.beta_s;
  p.beta_r = options.beta_r;
  p.tau = options.tau ? *options.tau : (14.1 * n + 6.9) / j;
  p.dt = options.dt ? *options.dt : std::min(0.01 / j, p.tau / 1e4);
  p.e_target = options.e_target ? *options.e_target : default_target(config);
  p.tuning = options.tuning.value_or(EnergyTuning::SelectedEigenstate);
  p.validate();
  return p;
}

double pulse_value(double t, const StirapParams& params, PulseSide side) {
  const double phase = params.gamma * t / params.tau;
  if (side == PulseSide::Sender)
    return 0.5 * params.j_max * (1.0 + std::tanh(phase - params.beta_s));
  return 0.5 * params.j_max * (1.0 - std::tanh(phase - params.beta_r));
}

double pulse_area(const SpinChainRealization& realization,
                  const StirapParams& params) {
  params.validate();
  const auto chain = build_hamiltonian(realization);
  const auto es = eigendecompose(chain);
  const int n = chain.dimension();
  const int k = select_target_state(es, params.e_target);
  const double v1 = es.eigenvectors(0, k);
  const double vn = es.eigenvectors(n - 1, k);

  const auto rate = [&](double t) {
    const double os = pulse_value(t, params, PulseSide::Sender) * v1;
    const double orc = pulse_value(t, params, PulseSide::Receiver) * vn;
    return std::sqrt(os * os + orc * orc);
  };

  // Simpson quadrature on the integrator's time grid (rounded up to an even
  // panel count); the integrand is smooth on the pulse timescale.
  const long panels =
      2 * std::max<long>(1, std::lround(std::ceil(params.tau / params.dt / 2.0)));
  const double h = params.tau / panels;
  double sum = rate(0.0) + rate(params.tau);
  for (long i = 1; i < panels; ++i)
    sum += (i % 2 ? 4.0 : 2.0) * rate(i * h);
  return sum * h / 3.0;
}

SpectralPropagator::SpectralPropagator(const EigenSystem& es,
                                       const Eigen::VectorXcd& psi0)
    : eigenvalues_(es.eigenvalues),
      vectors_(es.eigenvectors.cast<std::complex<double>>()) {
  if (psi0.size() != es.dimension())
    throw std::invalid_argument("SpectralPropagator: dimension mismatch");
  coeffs_ = vectors_.adjoint() * psi0;
}

Eigen::VectorXcd SpectralPropagator::at(double t) const {
  const int n = static_cast<int>(eigenvalues_.size());
  Eigen::VectorXcd c(n);
  for (int k = 0; k < n; ++k)
    c[k] = coeffs_[k] *
           std::exp(std::complex<double>(0.0, -eigenvalues_[k] * t));
  return vectors_ * c;
}

Eigen::VectorXcd propagate_static(const HamiltonianMatrix& h,
                                  const Eigen::VectorXcd& psi0, double t) {
  if (psi0.size() != h.dimension())
    throw std::invalid_argument("propagate_static: dimension mismatch");
  return SpectralPropagator(eigendecompose(h), psi0).at(t);
}

StateTrace integrate_tdse(const HamiltonianFiller& fill,
                          const Eigen::VectorXcd& psi0, double tau,
                          double dt) {
  if (!(tau > 0.0))
    throw std::invalid_argument("integrate_tdse: tau must be positive");
  if (!(dt > 0.0))
    throw std::invalid_argument("integrate_tdse: dt must be positive");
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw std::invalid_argument(
        "integrate_tdse: initial state must be normalized");

  const int d = static_cast<int>(psi0.size());
  Eigen::MatrixXd hbuf(d, d);
  Eigen::VectorXd re(d), im(d), rs(d), ms(d);
  Eigen::VectorXd kr1(d), kr2(d), kr3(d), kr4(d);
  Eigen::VectorXd km1(d), km2(d), km3(d), km4(d);

  // The state is split into real and imaginary parts so every stage is a
  // real mat-vec: d(re)/dt = H im, d(im)/dt = -H re.
  double step = dt;
  for (int attempt = 0; attempt <= kMaxHalvings; ++attempt, step *= 0.5) {
    const long n_steps = std::max<long>(
        1, static_cast<long>(std::ceil(tau / step - 1e-9)));
    const double h = tau / n_steps;
    const long interior = n_steps - 1;
    const long stride =
        interior > static_cast<long>(kMaxInteriorSamples)
            ? (interior + kMaxInteriorSamples - 1) /
                  static_cast<long>(kMaxInteriorSamples)
            : 1;

    re = psi0.real();
    im = psi0.imag();
    StateTrace out;
    out.dt_used = h;
    out.times.push_back(0.0);
    out.states.push_back(psi0);
    double drift = 0.0;
    bool failed = false;

    for (long i = 0; i < n_steps; ++i) {
      const double t = h * i;

      fill(t, hbuf);
      kr1.noalias() = hbuf * im;
      km1.noalias() = hbuf * re;
      km1 *= -1.0;

      rs = re + (0.5 * h) * kr1;
      ms = im + (0.5 * h) * km1;
      fill(t + 0.5 * h, hbuf);
      kr2.noalias() = hbuf * ms;
      km2.noalias() = hbuf * rs;
      km2 *= -1.0;

      rs = re + (0.5 * h) * kr2;
      ms = im + (0.5 * h) * km2;
      kr3.noalias() = hbuf * ms;
      km3.noalias() = hbuf * rs;
      km3 *= -1.0;

      rs = re + h * kr3;
      ms = im + h * km3;
      fill(t + h, hbuf);
      kr4.noalias() = hbuf * ms;
      km4.noalias() = hbuf * rs;
      km4 *= -1.0;

      re += (h / 6.0) * (kr1 + 2.0 * kr2 + 2.0 * kr3 + kr4);
      im += (h / 6.0) * (km1 + 2.0 * km2 + 2.0 * km3 + km4);

      const double nrm2 = re.squaredNorm() + im.squaredNorm();
      drift = std::max(drift, std::abs(nrm2 - 1.0));
      if (drift > kDriftTol) {
        // The running maximum only grows, so the attempt is already lost.
        failed = true;
        break;
      }

      const long done = i + 1;
      if (done == n_steps || done % stride == 0) {
        Eigen::VectorXcd psi(d);
        psi.real() = re;
        psi.imag() = im;
        out.times.push_back(h * done);
        out.states.push_back(std::move(psi));
      }
    }

    if (!failed) {
      out.norm_drift = drift;
      return out;
    }
  }
  throw AccuracyError(
      "integrate_tdse: norm drift above 1e-8 after 6 step halvings");
}

TransferTrace run_static_protocol(const SpinChainRealization& realization,
                                  const StaticProtocolParams& params) {
  params.validate();
  const auto chain = build_hamiltonian(realization);
  const auto es = eigendecompose(chain);
  const int n = chain.dimension();
  const int k = select_target_state(es, params.e_target);
  const double eps = params.tuning == EnergyTuning::SelectedEigenstate
                         ? es.eigenvalues[k]
                         : params.e_target;
  const auto ext = extend_with_endpoints(
      chain, {eps, eps, params.j_coupling, params.j_coupling});
  const auto ext_es = eigendecompose(ext);

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(n + 2);
  psi0[0] = 1.0;
  const SpectralPropagator prop(ext_es, psi0);

  const long n_grid =
      std::max<long>(1, std::lround(params.horizon / params.sample_dt));
  TransferTrace trace;
  trace.k_selected = k;
  trace.times.reserve(n_grid + 1);
  trace.p_sender.reserve(n_grid + 1);
  trace.p_chain.reserve(n_grid + 1);
  trace.p_receiver.reserve(n_grid + 1);
  for (long i = 0; i <= n_grid; ++i) {
    const double t = i * params.sample_dt;
    const Eigen::VectorXcd psi = prop.at(t);
    const Populations p = split_populations(psi, ext.labels);
    trace.times.push_back(t);
    trace.p_sender.push_back(p.sender);
    trace.p_chain.push_back(p.chain);
    trace.p_receiver.push_back(p.receiver);
    trace.norm_drift = std::max(
        trace.norm_drift, std::abs(p.sender + p.chain + p.receiver - 1.0));
  }

  const FirstPeak peak =
      scan_first_peak(trace.times, trace.p_receiver, kPeakFloor);
  if (peak.found) {
    // Cut the trace at the refined peak time and close it with an exact
    // sample there, so the terminal receiver population is not an
    // interpolation artifact.
    std::size_t keep = 0;
    while (keep + 1 < trace.times.size() && trace.times[keep + 1] < peak.time)
      ++keep;
    trace.times.resize(keep + 1);
    trace.p_sender.resize(keep + 1);
    trace.p_chain.resize(keep + 1);
    trace.p_receiver.resize(keep + 1);

    const Eigen::VectorXcd psi = prop.at(peak.time);
    const Populations p = split_populations(psi, ext.labels);
    trace.times.push_back(peak.time);
    trace.p_sender.push_back(p.sender);
    trace.p_chain.push_back(p.chain);
    trace.p_receiver.push_back(p.receiver);
    trace.norm_drift = std::max(
        trace.norm_drift, std::abs(p.sender + p.chain + p.receiver - 1.0));
    trace.tau_used = peak.time;
  } else {
    trace.no_peak = true;
    trace.tau_used = trace.times.back();
  }

  decimate_trace(trace);
  return trace;
}

TransferTrace run_stirap_protocol(const SpinChainRealization& realization,
                                  const StirapParams& params) {
  params.validate();
  const auto chain = build_hamiltonian(realization);
  const auto es = eigendecompose(chain);
  const int n = chain.dimension();
  const int k = select_target_state(es, params.e_target);
  const double eps = params.tuning == EnergyTuning::SelectedEigenstate
                         ? es.eigenvalues[k]
                         : params.e_target;
  const auto base = extend_with_endpoints(chain, {eps, eps, 0.0, 0.0});

  const auto fill = [&base, &params, n](double t, Eigen::MatrixXd& h) {
    h = base.entries;
    const double js = pulse_value(t, params, PulseSide::Sender);
    const double jr = pulse_value(t, params, PulseSide::Receiver);
    h(0, 1) = js;
    h(1, 0) = js;
    h(n, n + 1) = jr;
    h(n + 1, n) = jr;
  };

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(n + 2);
  psi0[0] = 1.0;
  const StateTrace st = integrate_tdse(fill, psi0, params.tau, params.dt);

  TransferTrace trace;
  trace.k_selected = k;
  trace.norm_drift = st.norm_drift;
  trace.tau_used = params.tau;
  trace.pulse_area = pulse_area(realization, params);
  const std::size_t m = st.times.size();
  trace.times.reserve(m);
  trace.p_sender.reserve(m);
  trace.p_chain.reserve(m);
  trace.p_receiver.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Populations p = split_populations(st.states[i], base.labels);
    trace.times.push_back(st.times[i]);
    trace.p_sender.push_back(p.sender);
    trace.p_chain.push_back(p.chain);
    trace.p_receiver.push_back(p.receiver);
  }
  decimate_trace(trace);
  return trace;
}

FirstPeak first_peak_time(const TransferTrace& trace) {
  if (trace.times.size() < 3)
    throw std::invalid_argument("first_peak_time: need at least 3 samples");
  return scan_first_peak(trace.times, trace.p_receiver, kPeakFloor);
}

Eigen::Matrix3d effective_three_state(double detuning, double omega_s,
                                      double omega_r) {
  Eigen::Matrix3d m;
  m << 0.0, omega_s, 0.0,
       omega_s, detuning, omega_r,
       0.0, omega_r, 0.0;
  return m;
}

}  // namespace spinchain
