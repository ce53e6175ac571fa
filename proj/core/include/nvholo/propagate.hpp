#pragma once

// Time-domain propagation of Schrodinger dynamics under a time-dependent
// Hermitian generator, plus the two independent holonomy estimators that the
// gate analysis cross-checks against full propagation:
//
//  * propagate_state / propagate_unitary: midpoint exponential integrator.
//    Each integration substep applies exp(-i H(t_mid) dt) with the generator
//    frozen at the substep midpoint (second-order accurate, exactly
//    norm-preserving up to eigensolver roundoff).
//
//  * dark_subspace_propagator: discrete parallel transport inside the
//    instantaneous two-dimensional kernel of the four-level generator,
//    yielding the geometric 2x2 gate with dynamical phases excluded by
//    construction.
//
//  * nonadiabatic_coupling: finite-difference <D2(t)| d/dt |D1(t)> between
//    the two kernel vectors, the quantity whose smallness justifies the
//    adiabatic picture.

#include <string>
#include <vector>

#include "nvholo/linalg.hpp"
#include "nvholo/model.hpp"

namespace nvholo {

// uniform output grid over [t0, tf] with `steps` intervals between stored
// nodes; each interval is subdivided into `substeps` integration steps so
// that stiff generators can be resolved without inflating the output size
struct TimeGrid {
  double t0 = 0.0;
  double tf = 1.0;
  int steps = 1000;
  int substeps = 1;

  double dt() const { return (tf - t0) / steps; }
  double dt_integration() const { return dt() / substeps; }
  double node(int k) const { return t0 + k * dt(); }
  void validate() const;
};

struct PropagationOptions {
  double norm_drift_tolerance = 1e-8;       // |norm(psi) - 1| ceiling, state runs
  double unitarity_tolerance = 1e-8;        // ||U U^dag - I||_inf ceiling, unitary runs
  double stability_threshold = 0.1;         // warn when dt_int * max ||H||_inf exceeds this
  double hermiticity_tolerance = tol::hermiticity;
  bool check_stability = true;
};

struct Trajectory {
  std::vector<double> times;                         // steps + 1 node times
  std::vector<StateVector> states;                   // state at each node
  std::vector<std::vector<double>> amplitude_norms;  // |<k|psi>| per node, per basis index
  double max_norm_drift = 0.0;
  bool stability_warning = false;
  int suggested_steps = 0;  // nonzero when stability_warning is set
};

struct UnitaryResult {
  ComplexMatrix propagator;     // U(tf, t0)
  double max_unitarity_defect = 0.0;
  bool stability_warning = false;
  int suggested_steps = 0;
};

// integrate i d/dt psi = H(t) psi from grid.t0 to grid.tf
Trajectory propagate_state(const HamiltonianModel& model, const StateVector& initial,
                           const TimeGrid& grid, const PropagationOptions& options = {});

// accumulate the full propagator over the grid
UnitaryResult propagate_unitary(const HamiltonianModel& model, const TimeGrid& grid,
                                const PropagationOptions& options = {});

// scan max ||H(t)||_inf on a coarse sample of the grid and compare against the
// stability threshold; returns the suggested total step count (0 when fine)
int stability_suggested_steps(const HamiltonianModel& model, const TimeGrid& grid,
                              double threshold);

// ---------------------------------------------------------------------------
// dark-subspace transport
// ---------------------------------------------------------------------------

struct DarkHolonomy {
  Eigen::Matrix2cd gate;        // re-unitarized transport, qubit basis {|1>, |2>}
  double max_step_defect = 0.0; // worst per-step deviation of the overlap
                                // matrix from unitarity
  double endpoint_defect = 0.0; // final polar-correction size
};

// parallel transport of the instantaneous dark pair along the schedule:
// G = prod_k M_k with (M_k)_ij = <D_i(t_{k+1}) | D_j(t_k)>, each factor
// re-unitarized via SVD; the result is expressed in the bare qubit basis
// through the endpoint dark frames. Steps whose overlap defect exceeds
// `step_defect_limit` abort with a diagnostic (the grid cannot resolve the
// frame rotation).
DarkHolonomy dark_subspace_propagator(const FourLevelParams& params, const TimeGrid& grid,
                                      double step_defect_limit = 0.1);

// <D2(t) | d/dt D1(t)> via symmetric finite difference with half-width h
// (default dt/10 of the caller's grid); each dark frame is gauge-fixed by
// making <D_i(t)|D_i(t +/- h)> real and positive before differencing
cd nonadiabatic_coupling(const FourLevelParams& params, double t, double h);

}  // namespace nvholo
