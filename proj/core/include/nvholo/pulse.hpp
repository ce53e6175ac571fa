#pragma once

// Pulse design for adiabatic holonomic control: the tanh-ramped envelope /
// phase pair that steers the system around a closed path on the control
// sphere, plus the geometric (solid-angle) phase accumulated by that path.
//
// All frequencies are angular, in rad/us; times are in us.

#include <complex>
#include <vector>

namespace nvholo {

using cd = std::complex<double>;

namespace pulse_tol {
// |phi_mix(t0) - phi_mix(tf)| allowed for a path to count as closed
inline constexpr double path_closure = 1e-6;
// both endpoints must additionally sit this close to the pole so the
// (zero-length) closing segment at the pole contributes nothing
inline constexpr double endpoint_cap = 1e-3;
}  // namespace pulse_tol

// ramp angle eta(t) = (pi/2) (1 + tanh(alpha t)); runs 0 -> pi
double eta(double t, double alpha);

// designed drive: envelope and common phase
//   Omega(t) = sqrt(3) omega0 sin(eta) / sqrt(2 - (3/2) sin^2 eta)
//   psi(t)   = pi/2 - atan2(2 cos(eta), sin(eta))   (continuous, 0 -> pi)
struct DesignedDrive {
  double omega;  // envelope, rad/us, >= 0
  double psi;    // common phase, rad
};
DesignedDrive designed_envelope(double t, double omega0, double alpha);

enum class EnvelopeKind { designed, gaussian_stirap, constant_amplitude };

struct GaussianPulse {
  double amplitude = 0.0;  // rad/us
  double center = 0.0;     // us
  double width = 1.0;      // us (Gaussian sigma)
  double eval(double t) const;
};

// One drive schedule feeding all four Rabi tones.  chi and phi are the
// time-independent superposition angles that set the rotation axis; omega0 is
// the shared two-photon detuning of the dark-state regime.
struct PulseSchedule {
  EnvelopeKind kind = EnvelopeKind::designed;
  double chi = 0.0;     // rad, principal range (-pi/2, pi/2]
  double phi = 0.0;     // rad, principal range (-pi, pi]
  double omega0 = 0.0;  // rad/us, >= 0
  double alpha = 1.0;   // rad/us, > 0 (designed ramp bandwidth)

  // gaussian_stirap envelopes (independent pump/Stokes shapes)
  GaussianPulse pump;
  GaussianPulse stokes;

  // constant_amplitude envelopes
  double omega_p_const = 0.0;  // rad/us
  double omega_s_const = 0.0;  // rad/us

  // per-tone scale factors; unequal pairs leave the dark-state regime
  cd scale_p1{1.0, 0.0}, scale_p2{1.0, 0.0};
  cd scale_s1{1.0, 0.0}, scale_s2{1.0, 0.0};

  // throws std::invalid_argument on out-of-range parameters
  void validate() const;

  // default half-window: 6/alpha for designed schedules (tanh within 1.3e-5
  // of saturation), otherwise the caller supplies the window
  double default_half_window() const;
};

// complex pump / Stokes envelopes at time t:
//   designed:  Omega_p = Omega cos(chi) e^{i phi} e^{i psi},
//              Omega_s = Omega sin(chi) e^{-i phi} e^{i psi}
//   gaussian_stirap / constant_amplitude: real envelopes, psi = 0
struct RabiPair {
  cd omega_p;
  cd omega_s;
};
RabiPair pump_stokes(const PulseSchedule& schedule, double t);

// control-sphere path: polar-like mixing angle phi_mix = atan(Omega/(sqrt2
// omega0)) and azimuth psi, sampled along a time grid.  psi is unwrapped.
struct BlochPath {
  std::vector<double> times;    // us
  std::vector<double> phi_mix;  // rad, [0, pi/2)
  std::vector<double> psi;      // rad, continuous
};

// sample the path on `samples` uniform times across [t0, tf]; omega0 must be
// positive (the mixing angle diverges at resonance)
BlochPath path_angles(const PulseSchedule& schedule, double t0, double tf, int samples);

// sample the path at caller-provided times (monotone increasing)
BlochPath path_angles(const PulseSchedule& schedule, const std::vector<double>& times);

// gamma_c = (1/2) oint (1 - cos(2 phi_mix)) dpsi, trapezoidal in psi.
// quadrature_error is a conservative estimate from comparison against the
// half-sampled rule; closure_defect is |phi_mix(t0) - phi_mix(tf)|.
struct GeometricPhase {
  double gamma;
  double quadrature_error;
  double closure_defect;
};
GeometricPhase geometric_phase(const BlochPath& path,
                               double closure_tolerance = pulse_tol::path_closure,
                               double endpoint_cap = pulse_tol::endpoint_cap);

}  // namespace nvholo
