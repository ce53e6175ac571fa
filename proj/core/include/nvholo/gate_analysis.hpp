#pragma once

// Extraction and cross-validation of the effective qubit gate.
//
// Three independent estimates of the same geometric phase are assembled side
// by side:
//   1. solid-angle line integral over the control path (pulse layer),
//   2. dark-subspace parallel transport (propagate layer),
//   3. eigenphase splitting of the fully propagated unitary.
// Their mutual agreement — together with operator fidelities against the
// closed-form target gate — is the primary correctness statement the tools
// and the acceptance suite report.

#include <string>

#include "nvholo/linalg.hpp"
#include "nvholo/model.hpp"
#include "nvholo/propagate.hpp"
#include "nvholo/pulse.hpp"

namespace nvholo {

struct ExtractedGate {
  Eigen::Matrix2cd raw;        // qubit block of the full propagator, as is
  Eigen::Matrix2cd projected;  // nearest unitary to the raw block
  double leakage = 0.0;        // 1 - mean qubit-column norm^2
  double projection_defect = 0.0;  // worst |sigma_i - 1| of the raw block
};

// pull the (q0, q1) block out of a dim x dim propagator
ExtractedGate extract_qubit_gate(const ComplexMatrix& propagator, int q0 = 0, int q1 = 1);

// |Tr(A^dag B)| / 2 for 2x2 gates: 1 iff equal up to global phase
double operator_fidelity(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

struct PhaseEstimate {
  double gamma = 0.0;       // relative phase between the |-D> and |D> eigenaxes
  double offdiag = 0.0;     // worst off-diagonal magnitude in the dark eigenbasis
  bool flagged = false;     // offdiag exceeded the flag threshold
};

// read the geometric phase off a propagated gate: rotate into the
// {|-D>, |D>} basis fixed by (chi, phi) and compare the diagonal phases
PhaseEstimate propagation_phase_gamma(const Eigen::Matrix2cd& gate, double chi, double phi,
                                      double flag_threshold = 0.05);

struct GateReport {
  // geometric-phase estimates
  double gamma_solid_angle = 0.0;
  double gamma_quadrature_error = 0.0;
  double path_closure_defect = 0.0;
  double gamma_dark_subspace = 0.0;
  double gamma_propagation = 0.0;
  double propagation_offdiag = 0.0;
  bool propagation_phase_flagged = false;

  // gates
  Eigen::Matrix2cd ideal;          // closed-form target at gamma_solid_angle
  Eigen::Matrix2cd holonomy;       // dark-subspace transport result
  Eigen::Matrix2cd propagated_raw;
  Eigen::Matrix2cd propagated;     // unitary-projected

  // figures of merit
  double fidelity_ideal_vs_propagated_raw = 0.0;
  double fidelity_ideal_vs_propagated = 0.0;
  double fidelity_ideal_vs_holonomy = 0.0;
  double fidelity_holonomy_vs_propagated = 0.0;
  double leakage = 0.0;
  double projection_defect = 0.0;
  double transport_step_defect = 0.0;
  double propagator_unitarity_defect = 0.0;
  bool stability_warning = false;
  int suggested_steps = 0;
  std::string model_label;
};

// run the full cross-validation pipeline for one schedule: solid-angle
// quadrature (at `phase_samples` nodes), dark-subspace transport on `grid`,
// and full propagation of `model` on `grid`, with the qubit block at rows
// (q0, q1). The model may be any generator whose (q0, q1) block carries the
// qubit (four-level or nine-level).
GateReport build_gate_report(const HamiltonianModel& model, const FourLevelParams& params,
                             const TimeGrid& grid, int q0 = 0, int q1 = 1,
                             int phase_samples = 20001,
                             const PropagationOptions& options = {},
                             double path_closure_tolerance = pulse_tol::path_closure,
                             double endpoint_cap = pulse_tol::endpoint_cap,
                             double step_defect_limit = 0.1, double offdiag_flag = 0.05);

// same pipeline, but scoring an externally supplied end-to-end propagator
// (e.g. a lab-frame run already transformed back to the rotating frame)
GateReport build_gate_report_from_propagator(
    const ComplexMatrix& propagator, double unitarity_defect, bool stability_warning,
    int suggested_steps, const std::string& model_label, const FourLevelParams& params,
    const TimeGrid& grid, int q0 = 0, int q1 = 1, int phase_samples = 20001,
    double path_closure_tolerance = pulse_tol::path_closure,
    double endpoint_cap = pulse_tol::endpoint_cap, double step_defect_limit = 0.1,
    double offdiag_flag = 0.05);

}  // namespace nvholo
