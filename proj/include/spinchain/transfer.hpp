// transfer.hpp — static and adiabatic sender-to-receiver transfer protocols.
//
// Both protocols attach a sender and a receiver spin to the chain ends and
// start with the excitation on the sender. The static protocol holds the
// end couplings fixed and waits for the first revival of the receiver
// population. The adiabatic protocol sweeps the two couplings as
// counterintuitively ordered tanh pulses, steering the excitation through a
// dark state of an effective three-level system so the chain is never
// appreciably populated.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

#include "spinchain/chain_model.hpp"
#include "spinchain/spectral.hpp"

namespace spinchain {

// How the sender/receiver detuning is chosen: lock onto the energy of the
// chain eigenstate nearest e_target, or hold e_target itself (the sensible
// choice for disordered ensembles, where per-realization eigenvalues jitter).
enum class EnergyTuning { SelectedEigenstate, FixedTarget };

// End couplings scale as coupling_scale * J / sqrt(N); this default keeps
// the protocols in the weak-coupling regime for every chain length.
inline constexpr double kDefaultCouplingScale = 0.49;

// Default detuning target in units of J. The long-range chain's density of
// states peaks displaced below band center; the nearest-neighbor peak sits
// at zero.
inline constexpr double kLongRangeTargetOverJ = -0.22;

// User-facing knobs shared by both protocols. Any field left unset falls
// back to a chain-length-dependent default inside make_static_params /
// make_stirap_params.
struct ProtocolOptions {
  double coupling_scale = kDefaultCouplingScale;
  std::optional<double> e_target;       // default -0.22 J (long-range) or 0
  std::optional<EnergyTuning> tuning;   // resolved by the caller
  double gamma = 6.0;                   // pulse steepness
  double beta_s = 2.3;                  // sender pulse offset
  double beta_r = 3.6;                  // receiver pulse offset
  std::optional<double> tau;            // pulse duration
  std::optional<double> dt;             // integrator step
  std::optional<double> horizon;        // static-protocol search window
  std::optional<double> sample_dt;      // static-protocol sampling step
};

struct StaticProtocolParams {
  double j_coupling = 0.0;  // J_s = J_r
  double e_target = 0.0;
  double horizon = 0.0;     // how long to search for the first revival
  double sample_dt = 0.0;
  EnergyTuning tuning = EnergyTuning::SelectedEigenstate;

  void validate() const;
};

struct StirapParams {
  double j_max = 0.0;   // pulse amplitude
  double gamma = 6.0;   // steepness of the tanh ramps
  double beta_s = 2.3;  // sender ramp offset
  double beta_r = 3.6;  // receiver ramp offset
  double tau = 0.0;     // protocol duration
  double dt = 0.0;      // integrator step
  double e_target = 0.0;
  EnergyTuning tuning = EnergyTuning::SelectedEigenstate;

  void validate() const;
};

// Resolves options against the chain: j = coupling_scale * J / sqrt(N),
// horizon = 2 (3.2 N + 2.3) / J (twice the expected transfer time),
// sample_dt = 0.1 / J, unset tuning -> SelectedEigenstate.
StaticProtocolParams make_static_params(const ChainConfig& config,
                                        const ProtocolOptions& options = {});

// Resolves options against the chain: j_max = coupling_scale * J / sqrt(N),
// tau = (14.1 N + 6.9) / J, dt = min(0.01 / J, tau / 1e4), unset tuning ->
// SelectedEigenstate.
StirapParams make_stirap_params(const ChainConfig& config,
                                const ProtocolOptions& options = {});

enum class PulseSide { Sender, Receiver };

// Coupling pulse at time t in [0, tau]:
//   J_s(t) = (j_max / 2) (1 + tanh(gamma t / tau - beta_s))
//   J_r(t) = (j_max / 2) (1 - tanh(gamma t / tau - beta_r))
// The receiver pulse leads and the sender pulse trails (counterintuitive
// ordering).
double pulse_value(double t, const StirapParams& params, PulseSide side);

// Integrated rms coupling rate into the selected chain eigenstate,
// area = int_0^tau sqrt(omega_s(t)^2 + omega_r(t)^2) dt. Adiabatic transfer
// needs an area well above 1; the defaults give roughly 10.
double pulse_area(const SpinChainRealization& realization,
                  const StirapParams& params);

// Population history of one protocol run. p_sender + p_chain + p_receiver
// sums to the squared state norm at every sample. Storage is decimated to
// at most 10^4 interior samples; the first and last samples are always
// kept.
struct TransferTrace {
  std::vector<double> times;
  std::vector<double> p_sender;
  std::vector<double> p_chain;
  std::vector<double> p_receiver;
  double norm_drift = 0.0;   // max |norm^2 - 1| over the run
  double tau_used = 0.0;     // peak time (static) or pulse duration (stirap)
  int k_selected = -1;       // 0-based chain eigenstate the endpoints tune to
  double pulse_area = 0.0;   // stirap only
  bool no_peak = false;      // static only: no revival before the horizon
};

struct FirstPeak {
  double time = 0.0;
  double value = 0.0;
  bool found = false;
};

// Exact spectral propagator psi(t) = V exp(-i Lambda t) V^T psi0 for a
// time-independent Hamiltonian.
class SpectralPropagator {
 public:
  SpectralPropagator(const EigenSystem& es, const Eigen::VectorXcd& psi0);
  Eigen::VectorXcd at(double t) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXcd coeffs_;
};

// One-shot exact propagation under a static Hamiltonian.
Eigen::VectorXcd propagate_static(const HamiltonianMatrix& h,
                                  const Eigen::VectorXcd& psi0, double t);

// Writes H(t) into the provided buffer. The buffer arrives in an
// unspecified state and must be fully written on every call.
using HamiltonianFiller = std::function<void(double t, Eigen::MatrixXd& h)>;

// Dense state history from the time-dependent integrator, decimated to at
// most 10^4 interior samples.
struct StateTrace {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  double norm_drift = 0.0;
  double dt_used = 0.0;
};

// Fixed-step classical RK4 for i d psi / dt = H(t) psi with real symmetric
// H(t). The squared norm is monitored every step; if its drift from 1
// exceeds 1e-8 the run restarts with the step halved, up to 6 times, after
// which AccuracyError is thrown. Requires a normalized initial state.
StateTrace integrate_tdse(const HamiltonianFiller& fill,
                          const Eigen::VectorXcd& psi0, double tau, double dt);

// Static protocol: tune both endpoints to the selected chain eigenstate,
// propagate exactly, and cut the trace at the first strict local maximum of
// the receiver population (quadratically refined, then re-evaluated
// exactly). If no peak appears before the horizon the full trace is
// returned with no_peak set.
TransferTrace run_static_protocol(const SpinChainRealization& realization,
                                  const StaticProtocolParams& params);

// Adiabatic protocol: integrate the pulsed Hamiltonian over [0, tau]. The
// terminal receiver population is the figure of merit.
TransferTrace run_stirap_protocol(const SpinChainRealization& realization,
                                  const StirapParams& params);

// First strict local maximum of p_receiver above a 1e-4 prominence floor,
// with quadratic refinement between samples. Returns the final sample time
// with found = false when the trace has no interior peak.
FirstPeak first_peak_time(const TransferTrace& trace);

// Effective sender / eigenstate / receiver three-level Hamiltonian
//   [ 0        omega_s   0       ]
//   [ omega_s  detuning  omega_r ]
//   [ 0        omega_r   0       ]
// with detuning the eigenstate energy relative to the endpoints. The dark
// state (omega_r, 0, -omega_s) / rms is a zero-energy eigenvector.
Eigen::Matrix3d effective_three_state(double detuning, double omega_s,
                                      double omega_r);

}  // namespace spinchain
