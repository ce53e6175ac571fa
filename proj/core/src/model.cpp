#include "nvholo/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nvholo {

namespace {

const cd kI{0.0, 1.0};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// tone Rabi values {p1, p2, s1, s2}: shared schedule envelopes times the
// per-tone scale factors
std::array<cd, 4> schedule_tone_rabi(const PulseSchedule& schedule, double t) {
  const RabiPair r = pump_stokes(schedule, t);
  return {schedule.scale_p1 * r.omega_p, schedule.scale_p2 * r.omega_p,
          schedule.scale_s1 * r.omega_s, schedule.scale_s2 * r.omega_s};
}

}  // namespace

// ---------------------------------------------------------------------------
// four-level model
// ---------------------------------------------------------------------------

std::array<cd, 4> FourLevelParams::rabi(double t) const {
  return schedule_tone_rabi(schedule, t);
}

bool FourLevelParams::dark_state_regime(double tolerance) const {
  return std::abs(delta1 - delta2) <= tolerance &&
         std::abs(schedule.scale_p1 - schedule.scale_p2) <= tolerance &&
         std::abs(schedule.scale_s1 - schedule.scale_s2) <= tolerance;
}

void FourLevelParams::validate() const {
  require(std::isfinite(delta1) && std::isfinite(delta2),
          "FourLevelParams: detunings must be finite");
  schedule.validate();
}

ComplexMatrix four_level_h(const FourLevelParams& params, double t) {
  const auto [wp1, wp2, ws1, ws2] = params.rabi(t);
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(0, 2) = 0.5 * kI * wp1;
  h(0, 3) = 0.5 * kI * wp2;
  h(1, 2) = -0.5 * kI * ws1;
  h(1, 3) = -0.5 * kI * ws2;
  h(2, 0) = std::conj(h(0, 2));
  h(3, 0) = std::conj(h(0, 3));
  h(2, 1) = std::conj(h(1, 2));
  h(3, 1) = std::conj(h(1, 3));
  h(2, 2) = params.delta1;
  h(3, 3) = -params.delta2;
  return h;
}

DarkPair dark_states(cd omega_p, cd omega_s, double omega0) {
  require(omega0 >= 0.0 && std::isfinite(omega0), "dark_states: omega0 must be >= 0");
  const double w2 = std::norm(omega_p) + std::norm(omega_s);
  const double w = std::sqrt(w2);
  DarkPair out;
  out.d1 = StateVector::Zero(4);
  out.d2 = StateVector::Zero(4);
  if (w == 0.0) {
    if (omega0 == 0.0)
      throw std::invalid_argument(
          "dark_states: degenerate case Omega = 0 and omega0 = 0 has no unique kernel basis");
    // drive off: the whole ground plane is dark; return the trivial pair
    out.d1(0) = 1.0;
    out.d2(1) = 1.0;
    return out;
  }
  const double theta = std::sqrt(w2 + 2.0 * omega0 * omega0);
  out.d1(0) = std::conj(omega_s) / w;
  out.d1(1) = std::conj(omega_p) / w;
  const cd excited = kI * w / (std::sqrt(2.0) * theta);
  const double bright_weight = std::sqrt(2.0) * omega0 / theta;
  out.d2(0) = bright_weight * omega_p / w;
  out.d2(1) = -bright_weight * omega_s / w;
  out.d2(2) = excited;
  out.d2(3) = -excited;
  return out;
}

StateVector bright_state(cd omega_p, cd omega_s) {
  const double w = std::sqrt(std::norm(omega_p) + std::norm(omega_s));
  require(w > 0.0, "bright_state: requires a nonzero drive");
  StateVector b = StateVector::Zero(4);
  b(0) = omega_p / w;
  b(1) = -omega_s / w;
  return b;
}

Eigen::Vector2cd d_state(double chi, double phi) {
  Eigen::Vector2cd d;
  d(0) = std::sin(chi) * std::polar(1.0, -phi);
  d(1) = std::cos(chi) * std::polar(1.0, phi);
  return d;
}

Eigen::Vector2cd minus_d_state(double chi, double phi) {
  Eigen::Vector2cd d;
  d(0) = std::cos(chi) * std::polar(1.0, -phi);
  d(1) = -std::sin(chi) * std::polar(1.0, phi);
  return d;
}

Eigen::Matrix2cd ideal_gate(double chi, double phi, double gamma) {
  const double nx = -std::sin(2.0 * chi) * std::cos(2.0 * phi);
  const double ny = -std::sin(2.0 * chi) * std::sin(2.0 * phi);
  const double nz = std::cos(2.0 * chi);
  Eigen::Matrix2cd nsigma;
  nsigma << nz, cd(nx, -ny), cd(nx, ny), -nz;
  const double half = 0.5 * gamma;
  return std::polar(1.0, half) *
         (std::cos(half) * Eigen::Matrix2cd::Identity() + kI * std::sin(half) * nsigma);
}

// ---------------------------------------------------------------------------
// lab-frame four-level model
// ---------------------------------------------------------------------------

LabCarriers LabCarriers::for_detunings(double delta1, double delta2, double omega3,
                                       double omega4) {
  LabCarriers c;
  c.omega1 = 0.0;
  c.omega2 = 0.0;
  c.omega3 = omega3;
  c.omega4 = omega4;
  c.nu_p1 = omega3 - c.omega1 - delta1;
  c.nu_p2 = omega4 + delta2 - c.omega1;
  c.nu_s1 = c.nu_p1;
  c.nu_s2 = c.nu_p2;
  return c;
}

ComplexMatrix lab_frame_h(const FourLevelParams& params, const LabCarriers& carriers,
                          double t) {
  const auto [wp1, wp2, ws1, ws2] = params.rabi(t);
  // each tone addresses exactly one transition with a cosine carrier; the
  // co-rotating half reproduces the rotating-frame matrix, the counter-rotating
  // half oscillates near 2*nu and averages away as the carriers grow.  A shared
  // field driving both excited rows would add a carrier-independent cross-Raman
  // shift between the ground states (same-carrier tone pairs through the
  // far-detuned excited level) and the rotating-frame overlap would saturate
  // below one no matter how fast the carriers are.
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(0, 0) = carriers.omega1;
  h(1, 1) = carriers.omega2;
  h(2, 2) = carriers.omega3;
  h(3, 3) = carriers.omega4;
  h(0, 2) = 0.5 * kI * wp1 * 2.0 * std::cos(carriers.nu_p1 * t);
  h(0, 3) = 0.5 * kI * wp2 * 2.0 * std::cos(carriers.nu_p2 * t);
  h(1, 2) = -0.5 * kI * ws1 * 2.0 * std::cos(carriers.nu_s1 * t);
  h(1, 3) = -0.5 * kI * ws2 * 2.0 * std::cos(carriers.nu_s2 * t);
  h(2, 0) = std::conj(h(0, 2));
  h(3, 0) = std::conj(h(0, 3));
  h(2, 1) = std::conj(h(1, 2));
  h(3, 1) = std::conj(h(1, 3));
  return h;
}

ComplexMatrix lab_to_rotating_frame(const FourLevelParams& params,
                                    const LabCarriers& carriers, double t) {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = std::polar(1.0, carriers.omega1 * t);
  u(1, 1) = std::polar(1.0, carriers.omega2 * t);
  u(2, 2) = std::polar(1.0, (carriers.omega3 - params.delta1) * t);
  u(3, 3) = std::polar(1.0, (carriers.omega4 + params.delta2) * t);
  return u;
}

// ---------------------------------------------------------------------------
// nine-level model
// ---------------------------------------------------------------------------

const char* const kNineStateNames[kNineDim] = {"ms_minus1", "ms_plus1", "ms_0",
                                               "A2",        "A1",       "Ex",
                                               "Ey",        "Epx",      "Epy"};

std::vector<DipoleCoupling> default_dipole_table() {
  using P = Polarization;
  return {
      // strong Lambda couplings; the A2/A1 sign difference mirrors the
      // four-level (|1><3| - |1><4|) dipole pattern
      {kGroundMinus1, kExcitedA2, P::pump_circular, {1.0, 0.0}},
      {kGroundMinus1, kExcitedA1, P::pump_circular, {-1.0, 0.0}},
      {kGroundPlus1, kExcitedA2, P::stokes_circular, {1.0, 0.0}},
      {kGroundPlus1, kExcitedA1, P::stokes_circular, {1.0, 0.0}},
      // far-detuned partners of the circular channels
      {kGroundPlus1, kExcitedEx, P::pump_circular, {1.0, 0.0}},
      {kGroundPlus1, kExcitedEy, P::pump_circular, {1.0, 0.0}},
      {kGroundMinus1, kExcitedEx, P::stokes_circular, {1.0, 0.0}},
      {kGroundMinus1, kExcitedEy, P::stokes_circular, {1.0, 0.0}},
      // linear channels touch only m_s = 0; undriven by the circular tones
      {kGroundZero, kExcitedEpy, P::linear_x, {1.0, 0.0}},
      {kGroundZero, kExcitedEpx, P::linear_y, {1.0, 0.0}},
  };
}

namespace {

bool pair_allowed(int ground, int excited, Polarization pol) {
  using P = Polarization;
  switch (pol) {
    case P::pump_circular:
      return (ground == kGroundMinus1 && (excited == kExcitedA2 || excited == kExcitedA1)) ||
             (ground == kGroundPlus1 && (excited == kExcitedEx || excited == kExcitedEy));
    case P::stokes_circular:
      return (ground == kGroundPlus1 && (excited == kExcitedA2 || excited == kExcitedA1)) ||
             (ground == kGroundMinus1 && (excited == kExcitedEx || excited == kExcitedEy));
    case P::linear_x:
      return ground == kGroundZero && excited == kExcitedEpy;
    case P::linear_y:
      return ground == kGroundZero && excited == kExcitedEpx;
  }
  return false;
}

}  // namespace

void NineLevelParams::validate() const {
  require(d_gs >= 0.0 && std::isfinite(d_gs), "NineLevelParams: d_gs must be >= 0");
  for (double e : excited_energies)
    require(std::isfinite(e), "NineLevelParams: excited energies must be finite");
  require(std::isfinite(delta1) && std::isfinite(delta2),
          "NineLevelParams: detunings must be finite");
  schedule.validate();
  for (const auto& row : dipole) {
    require(row.ground >= kGroundMinus1 && row.ground <= kGroundZero,
            "NineLevelParams: dipole row ground index out of range");
    require(row.excited >= kExcitedA2 && row.excited <= kExcitedEpy,
            "NineLevelParams: dipole row excited index out of range");
    if (!pair_allowed(row.ground, row.excited, row.pol)) {
      std::ostringstream msg;
      msg << "NineLevelParams: dipole coupling " << kNineStateNames[row.ground] << " <-> "
          << kNineStateNames[row.excited] << " violates the selection-rule pattern";
      throw std::invalid_argument(msg.str());
    }
  }
}

double NineLevelParams::excited_energy(int index) const {
  require(index >= kExcitedA2 && index <= kExcitedEpy,
          "NineLevelParams: not an excited-state index");
  return excited_energies[static_cast<size_t>(index - kExcitedA2)];
}

ComplexMatrix nine_level_h(const NineLevelParams& params, double t) {
  // frame frequencies: grounds rotate at their own energies; A2/A1 at the
  // tone-shifted energies (leaving the four-level detunings on the diagonal);
  // E states at their own energies (their couplings carry the full beats)
  const double e_a2 = params.excited_energy(kExcitedA2);
  const double e_a1 = params.excited_energy(kExcitedA1);
  std::array<double, kNineDim> ground_energy{};
  ground_energy[kGroundMinus1] = 0.0;
  ground_energy[kGroundPlus1] = 0.0;
  ground_energy[kGroundZero] = -params.d_gs;

  std::array<double, kNineDim> frame{};
  frame[kGroundMinus1] = ground_energy[kGroundMinus1];
  frame[kGroundPlus1] = ground_energy[kGroundPlus1];
  frame[kGroundZero] = ground_energy[kGroundZero];
  frame[kExcitedA2] = e_a2 - params.delta1;
  frame[kExcitedA1] = e_a1 + params.delta2;
  frame[kExcitedEx] = params.excited_energy(kExcitedEx);
  frame[kExcitedEy] = params.excited_energy(kExcitedEy);
  frame[kExcitedEpx] = params.excited_energy(kExcitedEpx);
  frame[kExcitedEpy] = params.excited_energy(kExcitedEpy);

  ComplexMatrix h = ComplexMatrix::Zero(kNineDim, kNineDim);
  h(kExcitedA2, kExcitedA2) = params.delta1;
  h(kExcitedA1, kExcitedA1) = -params.delta2;

  // the four applied tones: frequency, channel, sign (pi phase difference on
  // pump tone 2; overall Stokes sign as in the four-level matrix)
  const auto [wp1, wp2, ws1, ws2] = schedule_tone_rabi(params.schedule, t);
  struct Tone {
    Polarization pol;
    double sign;
    cd rabi;
    double nu;
  };
  const std::array<Tone, 4> tones{{
      {Polarization::pump_circular, +1.0, wp1, e_a2 - ground_energy[kGroundMinus1] - params.delta1},
      {Polarization::pump_circular, -1.0, wp2, e_a1 - ground_energy[kGroundMinus1] + params.delta2},
      {Polarization::stokes_circular, -1.0, ws1, e_a2 - ground_energy[kGroundMinus1] - params.delta1},
      {Polarization::stokes_circular, -1.0, ws2, e_a1 - ground_energy[kGroundMinus1] + params.delta2},
  }};

  for (const auto& tone : tones) {
    if (tone.rabi == cd(0.0, 0.0)) continue;
    for (const auto& row : params.dipole) {
      if (row.pol != tone.pol) continue;
      // residual rotation of this tone on this transition after the frame
      const double theta = (frame[row.excited] - frame[row.ground]) - tone.nu;
      h(row.ground, row.excited) +=
          0.5 * cd(0.0, 1.0) * tone.sign * row.strength * tone.rabi *
          std::polar(1.0, -theta * t);
    }
  }
  for (int g = kGroundMinus1; g <= kGroundZero; ++g)
    for (int e = kExcitedA2; e <= kExcitedEpy; ++e) h(e, g) = std::conj(h(g, e));
  return h;
}

// ---------------------------------------------------------------------------
// generator handles
// ---------------------------------------------------------------------------

HamiltonianModel four_level_model(FourLevelParams params) {
  params.validate();
  HamiltonianModel m;
  m.dim = 4;
  m.label = "four_level";
  m.eval = [params](double t, ComplexMatrix& out) { out = four_level_h(params, t); };
  return m;
}

HamiltonianModel nine_level_model(NineLevelParams params) {
  params.validate();
  HamiltonianModel m;
  m.dim = kNineDim;
  m.label = "nine_level";
  m.eval = [params](double t, ComplexMatrix& out) { out = nine_level_h(params, t); };
  return m;
}

HamiltonianModel lab_frame_model(FourLevelParams params, LabCarriers carriers) {
  params.validate();
  HamiltonianModel m;
  m.dim = 4;
  m.label = "lab_frame";
  m.eval = [params, carriers](double t, ComplexMatrix& out) {
    out = lab_frame_h(params, carriers, t);
  };
  return m;
}

}  // namespace nvholo
