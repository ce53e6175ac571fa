#pragma once

// Hamiltonian models of the driven NV center.
//
// Four-level system: |1>, |2> are the ground m_s = -1 / m_s = +1 sublevels,
// |3>, |4> the two optically addressed excited spin states (upper / lower).
// Two bichromatic fields (pump tones p1/p2 from |1>, Stokes tones s1/s2 from
// |2>) drive the Lambda pairs.  In the bichromatic rotating frame:
//
//         [ 0          0          (i/2) Wp1   (i/2) Wp2 ]
//   H  =  [ 0          0         -(i/2) Ws1  -(i/2) Ws2 ]
//         [ .          .           delta1      0        ]
//         [ .          .           0          -delta2   ]
//
// (lower triangle by Hermiticity).  With delta1 = delta2 = omega0 and
// pairwise-equal tones, the kernel is spanned by two degenerate dark states.
//
// Nine-level system: full ground triplet {m_s = -1, +1, 0} and excited
// manifold {A2, A1, Ex, Ey, E'x, E'y}, all polarization-allowed couplings of
// each tone retained with explicit beat phases; only optical-frequency
// counter-rotating terms are dropped.
//
// All frequencies angular, rad/us; times us.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "nvholo/linalg.hpp"
#include "nvholo/pulse.hpp"

namespace nvholo {

// ---------------------------------------------------------------------------
// four-level model
// ---------------------------------------------------------------------------

struct FourLevelParams {
  double delta1 = 0.0;  // detuning of upper excited |3>, rad/us
  double delta2 = 0.0;  // detuning of lower excited |4>, rad/us
  PulseSchedule schedule;

  // tone Rabi values {p1, p2, s1, s2} at time t (schedule envelopes times the
  // per-tone scale factors)
  std::array<cd, 4> rabi(double t) const;

  // true when delta1 == delta2 and the per-tone scales are pairwise equal,
  // i.e. the degenerate-dark-subspace conditions hold
  bool dark_state_regime(double tolerance = 1e-12) const;

  void validate() const;
};

// rotating-frame four-level Hamiltonian at time t (matrix above)
ComplexMatrix four_level_h(const FourLevelParams& params, double t);

// degenerate dark pair for instantaneous Rabi values (dark-state regime):
//   |D1> = (Ws*/W)|1> + (Wp*/W)|2>
//   |D2> = i W/(sqrt2 Theta) (|3> - |4>) + sqrt2 omega0/Theta |B1>
// with W = sqrt(|Wp|^2 + |Ws|^2), Theta = sqrt(W^2 + 2 omega0^2).
// Requires W > 0 or omega0 > 0 (both zero is degenerate everything).
struct DarkPair {
  StateVector d1;  // dim 4
  StateVector d2;  // dim 4
};
DarkPair dark_states(cd omega_p, cd omega_s, double omega0);

// bright ground combination |B1> = (Wp/W)|1> - (Ws/W)|2>; requires W > 0
StateVector bright_state(cd omega_p, cd omega_s);

// qubit-plane dark vectors used for gate phase readout (fixed convention,
// never re-derived from a gate's eigenvectors):
//   |D>  = sin(chi) e^{-i phi} |1> + cos(chi) e^{i phi} |2>
//   |-D> = cos(chi) e^{-i phi} |1> - sin(chi) e^{i phi} |2>
Eigen::Vector2cd d_state(double chi, double phi);
Eigen::Vector2cd minus_d_state(double chi, double phi);

// ideal holonomic rotation
//   U = e^{i gamma/2} [cos(gamma/2) I + i sin(gamma/2) n.sigma],
//   n = (-sin(2chi) cos(2phi), -sin(2chi) sin(2phi), cos(2chi));
// eigenvalue 1 on |D>, e^{i gamma} on |-D>
Eigen::Matrix2cd ideal_gate(double chi, double phi, double gamma);

// ---------------------------------------------------------------------------
// lab-frame four-level model (RWA validation oracle)
// ---------------------------------------------------------------------------

// Bare energies and the four optical tone frequencies.  Each tone addresses
// exactly one transition: p1 drives |1>-|3>, p2 drives |1>-|4>, s1 drives
// |2>-|3>, s2 drives |2>-|4>, all with cosine carriers.  Carriers here are
// desk-scale surrogates chosen large relative to Rabi/detuning scales.
struct LabCarriers {
  double omega1 = 0.0, omega2 = 0.0;  // ground energies, rad/us
  double omega3 = 0.0, omega4 = 0.0;  // excited energies, rad/us
  double nu_p1 = 0.0, nu_p2 = 0.0;    // pump tone frequencies
  double nu_s1 = 0.0, nu_s2 = 0.0;    // Stokes tone frequencies

  // tones resonant with the rotating-frame convention: nu_p1 = omega3 -
  // omega1 - delta1, nu_p2 = omega4 + delta2 - omega1, nu_si = nu_pi
  static LabCarriers for_detunings(double delta1, double delta2, double omega3,
                                   double omega4);
};

// full lab-frame Hamiltonian with cosine carriers (co- and counter-rotating
// halves both retained)
ComplexMatrix lab_frame_h(const FourLevelParams& params, const LabCarriers& carriers,
                          double t);

// diagonal frame map exp(+i H0 t), H0 = diag(w1, w2, w3 - delta1, w4 + delta2);
// applying it to a lab-frame state yields the rotating-frame state
ComplexMatrix lab_to_rotating_frame(const FourLevelParams& params,
                                    const LabCarriers& carriers, double t);

// ---------------------------------------------------------------------------
// nine-level model
// ---------------------------------------------------------------------------

// basis order
enum NineIndex : int {
  kGroundMinus1 = 0,
  kGroundPlus1 = 1,
  kGroundZero = 2,
  kExcitedA2 = 3,
  kExcitedA1 = 4,
  kExcitedEx = 5,
  kExcitedEy = 6,
  kExcitedEpx = 7,
  kExcitedEpy = 8,
};
inline constexpr int kNineDim = 9;
extern const char* const kNineStateNames[kNineDim];

// polarization channels: the two circular channels driving the Lambda system
// plus the two linear channels that only touch m_s = 0
enum class Polarization { pump_circular, stokes_circular, linear_x, linear_y };

struct DipoleCoupling {
  int ground;        // NineIndex of the ground state
  int excited;       // NineIndex of the excited state
  Polarization pol;  // which field channel drives it
  cd strength;       // relative dipole element
};

// selection-rule dipole table:
//   pump channel:   m-1 <-> {A2 (+1), A1 (-1)}   strong
//                   m+1 <-> {Ex, Ey}             far-detuned, retained
//   Stokes channel: m+1 <-> {A2, A1}             strong
//                   m-1 <-> {Ex, Ey}             far-detuned, retained
//   linear x / y:   m0  <-> E'y / E'x            present, undriven here
std::vector<DipoleCoupling> default_dipole_table();

struct NineLevelParams {
  double d_gs = 0.0;  // ground zero-field splitting (m_s = +-1 above m_s = 0)
  // excited fine-structure energies relative to the manifold centroid, order
  // {A2, A1, Ex, Ey, E'x, E'y}; any common offset cancels out
  std::array<double, 6> excited_energies{};
  double delta1 = 0.0;  // pump tone 1 detuning from m-1 -> A2
  double delta2 = 0.0;  // pump tone 2 detuning from m-1 -> A1 (sign as four-level)
  PulseSchedule schedule;
  std::vector<DipoleCoupling> dipole = default_dipole_table();

  // throws if the dipole table strays outside the selection-rule pattern
  void validate() const;

  double excited_energy(int index) const;  // by NineIndex
};

// rotating-frame nine-level Hamiltonian at time t.  Each tone couples every
// transition its polarization allows; pairs detuned from the tone carry the
// explicit residual beat phase e^{-i theta t} with theta = (E_e - E_g) - nu.
ComplexMatrix nine_level_h(const NineLevelParams& params, double t);

// ---------------------------------------------------------------------------
// generic time-dependent generator handle
// ---------------------------------------------------------------------------

struct HamiltonianModel {
  int dim = 0;
  std::string label;
  // writes H(t) into `out` (pre-sized dim x dim)
  std::function<void(double, ComplexMatrix&)> eval;

  ComplexMatrix operator()(double t) const {
    ComplexMatrix h(dim, dim);
    eval(t, h);
    return h;
  }
};

HamiltonianModel four_level_model(FourLevelParams params);
HamiltonianModel nine_level_model(NineLevelParams params);
HamiltonianModel lab_frame_model(FourLevelParams params, LabCarriers carriers);

}  // namespace nvholo
