#include "nvholo/pulse.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nvholo {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

double eta(double t, double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "eta: alpha must be positive and finite");
  return 0.5 * kPi * (1.0 + std::tanh(alpha * t));
}

DesignedDrive designed_envelope(double t, double omega0, double alpha) {
  require(omega0 > 0.0 && std::isfinite(omega0),
          "designed_envelope: omega0 must be positive and finite");
  const double e = eta(t, alpha);
  const double s = std::sin(e);
  const double c = std::cos(e);
  DesignedDrive out;
  out.omega = std::sqrt(3.0) * omega0 * s / std::sqrt(2.0 - 1.5 * s * s);
  // atan2 keeps the branch continuous across eta = pi/2 and produces the
  // limits psi(0) = 0, psi(pi) = pi without dividing by sin(eta)
  out.psi = 0.5 * kPi - std::atan2(2.0 * c, s);
  return out;
}

double GaussianPulse::eval(double t) const {
  const double u = (t - center) / width;
  return amplitude * std::exp(-0.5 * u * u);
}

void PulseSchedule::validate() const {
  require(std::isfinite(chi) && chi > -0.5 * kPi - 1e-12 && chi <= 0.5 * kPi + 1e-12,
          "PulseSchedule: chi outside principal range (-pi/2, pi/2]");
  require(std::isfinite(phi) && phi > -kPi - 1e-12 && phi <= kPi + 1e-12,
          "PulseSchedule: phi outside principal range (-pi, pi]");
  require(omega0 >= 0.0 && std::isfinite(omega0), "PulseSchedule: omega0 must be >= 0");
  switch (kind) {
    case EnvelopeKind::designed:
      require(omega0 > 0.0, "PulseSchedule: designed envelope requires omega0 > 0");
      require(alpha > 0.0 && std::isfinite(alpha), "PulseSchedule: alpha must be > 0");
      break;
    case EnvelopeKind::gaussian_stirap:
      require(pump.amplitude >= 0.0 && stokes.amplitude >= 0.0,
              "PulseSchedule: Gaussian amplitudes must be >= 0");
      require(pump.width > 0.0 && stokes.width > 0.0,
              "PulseSchedule: Gaussian widths must be > 0");
      break;
    case EnvelopeKind::constant_amplitude:
      require(std::isfinite(omega_p_const) && std::isfinite(omega_s_const),
              "PulseSchedule: constant amplitudes must be finite");
      break;
  }
}

double PulseSchedule::default_half_window() const {
  if (kind == EnvelopeKind::designed) return 6.0 / alpha;
  return 6.0;
}

RabiPair pump_stokes(const PulseSchedule& schedule, double t) {
  RabiPair out;
  switch (schedule.kind) {
    case EnvelopeKind::designed: {
      const DesignedDrive d = designed_envelope(t, schedule.omega0, schedule.alpha);
      const cd common = std::polar(1.0, d.psi);
      out.omega_p = d.omega * std::cos(schedule.chi) * std::polar(1.0, schedule.phi) * common;
      out.omega_s = d.omega * std::sin(schedule.chi) * std::polar(1.0, -schedule.phi) * common;
      break;
    }
    case EnvelopeKind::gaussian_stirap:
      out.omega_p = schedule.pump.eval(t);
      out.omega_s = schedule.stokes.eval(t);
      break;
    case EnvelopeKind::constant_amplitude:
      out.omega_p = schedule.omega_p_const;
      out.omega_s = schedule.omega_s_const;
      break;
  }
  return out;
}

namespace {

// psi for kinds without an intrinsic phase is identically zero
double schedule_psi(const PulseSchedule& schedule, double t) {
  if (schedule.kind == EnvelopeKind::designed)
    return designed_envelope(t, schedule.omega0, schedule.alpha).psi;
  return 0.0;
}

double envelope_norm(const PulseSchedule& schedule, double t) {
  const RabiPair r = pump_stokes(schedule, t);
  return std::sqrt(std::norm(r.omega_p) + std::norm(r.omega_s));
}

BlochPath path_at_times(const PulseSchedule& schedule, std::vector<double> times) {
  require(schedule.omega0 > 0.0,
          "path_angles: omega0 must be positive (mixing angle undefined at resonance)");
  require(times.size() >= 2, "path_angles: need at least two samples");
  for (size_t k = 1; k < times.size(); ++k)
    require(times[k] > times[k - 1], "path_angles: times must be strictly increasing");

  BlochPath path;
  path.times = std::move(times);
  path.phi_mix.reserve(path.times.size());
  path.psi.reserve(path.times.size());
  const double sqrt2_omega0 = std::sqrt(2.0) * schedule.omega0;
  double prev_psi = 0.0;
  double offset = 0.0;
  for (size_t k = 0; k < path.times.size(); ++k) {
    const double t = path.times[k];
    path.phi_mix.push_back(std::atan2(envelope_norm(schedule, t), sqrt2_omega0));
    double raw = schedule_psi(schedule, t);
    // defensive unwrap: fold any jump beyond pi back into the continuous branch
    if (k > 0) {
      double jump = raw + offset - prev_psi;
      while (jump > kPi) {
        offset -= 2.0 * kPi;
        jump -= 2.0 * kPi;
      }
      while (jump < -kPi) {
        offset += 2.0 * kPi;
        jump += 2.0 * kPi;
      }
    }
    prev_psi = raw + offset;
    path.psi.push_back(prev_psi);
  }
  return path;
}

}  // namespace

BlochPath path_angles(const PulseSchedule& schedule, double t0, double tf, int samples) {
  require(samples >= 2, "path_angles: need at least two samples");
  require(tf > t0, "path_angles: tf must exceed t0");
  std::vector<double> times(static_cast<size_t>(samples));
  const double dt = (tf - t0) / (samples - 1);
  for (int k = 0; k < samples; ++k) times[static_cast<size_t>(k)] = t0 + k * dt;
  times.back() = tf;
  return path_at_times(schedule, std::move(times));
}

BlochPath path_angles(const PulseSchedule& schedule, const std::vector<double>& times) {
  return path_at_times(schedule, times);
}

namespace {

// trapezoid rule for (1/2) integral (1 - cos(2 phi_mix)) dpsi = integral
// sin^2(phi_mix) dpsi, optionally skipping every other node
double line_integral(const BlochPath& path, size_t stride) {
  double acc = 0.0;
  size_t prev = 0;
  for (size_t k = stride; k < path.psi.size(); k += stride) {
    const double fa = std::sin(path.phi_mix[prev]) * std::sin(path.phi_mix[prev]);
    const double fb = std::sin(path.phi_mix[k]) * std::sin(path.phi_mix[k]);
    acc += 0.5 * (fa + fb) * (path.psi[k] - path.psi[prev]);
    prev = k;
  }
  // include a final partial panel if the stride does not land on the endpoint
  if (prev != path.psi.size() - 1) {
    const size_t last = path.psi.size() - 1;
    const double fa = std::sin(path.phi_mix[prev]) * std::sin(path.phi_mix[prev]);
    const double fb = std::sin(path.phi_mix[last]) * std::sin(path.phi_mix[last]);
    acc += 0.5 * (fa + fb) * (path.psi[last] - path.psi[prev]);
  }
  return acc;
}

}  // namespace

GeometricPhase geometric_phase(const BlochPath& path, double closure_tolerance,
                               double endpoint_cap) {
  require(path.times.size() >= 3 && path.times.size() == path.phi_mix.size() &&
              path.times.size() == path.psi.size(),
          "geometric_phase: malformed path");
  const double defect = std::abs(path.phi_mix.front() - path.phi_mix.back());
  if (defect > closure_tolerance || path.phi_mix.front() > endpoint_cap ||
      path.phi_mix.back() > endpoint_cap) {
    std::ostringstream msg;
    msg << "geometric_phase: path not closed at the pole; endpoint mixing angles "
        << path.phi_mix.front() << " and " << path.phi_mix.back() << " (mismatch " << defect
        << ", tolerance " << closure_tolerance << ", cap " << endpoint_cap << ")";
    throw std::invalid_argument(msg.str());
  }
  GeometricPhase out;
  out.closure_defect = defect;
  out.gamma = line_integral(path, 1);
  out.quadrature_error = std::abs(out.gamma - line_integral(path, 2));
  return out;
}

}  // namespace nvholo
