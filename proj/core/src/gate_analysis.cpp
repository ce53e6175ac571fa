#include "nvholo/gate_analysis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace nvholo {

namespace {

Eigen::Matrix2cd polar_project(const Eigen::Matrix2cd& m, double* defect) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (defect) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(svd.singularValues()(i) - 1.0));
    *defect = worst;
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

ExtractedGate extract_qubit_gate(const ComplexMatrix& propagator, int q0, int q1) {
  const int dim = static_cast<int>(propagator.rows());
  if (propagator.cols() != dim)
    throw std::invalid_argument("extract_qubit_gate: propagator must be square");
  if (q0 < 0 || q1 < 0 || q0 >= dim || q1 >= dim || q0 == q1)
    throw std::invalid_argument("extract_qubit_gate: invalid qubit indices");

  ExtractedGate out;
  out.raw << propagator(q0, q0), propagator(q0, q1), propagator(q1, q0), propagator(q1, q1);
  const double kept0 = std::norm(propagator(q0, q0)) + std::norm(propagator(q1, q0));
  const double kept1 = std::norm(propagator(q0, q1)) + std::norm(propagator(q1, q1));
  out.leakage = 1.0 - 0.5 * (kept0 + kept1);
  out.projected = polar_project(out.raw, &out.projection_defect);
  return out;
}

double operator_fidelity(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return 0.5 * std::abs((a.adjoint() * b).trace());
}

PhaseEstimate propagation_phase_gamma(const Eigen::Matrix2cd& gate, double chi, double phi,
                                      double flag_threshold) {
  Eigen::Matrix2cd axes;
  axes.col(0) = minus_d_state(chi, phi);
  axes.col(1) = d_state(chi, phi);
  const Eigen::Matrix2cd in_dark_basis = axes.adjoint() * gate * axes;

  PhaseEstimate out;
  out.gamma = std::arg(in_dark_basis(0, 0) * std::conj(in_dark_basis(1, 1)));
  out.offdiag = std::max(std::abs(in_dark_basis(0, 1)), std::abs(in_dark_basis(1, 0)));
  out.flagged = out.offdiag > flag_threshold;
  return out;
}

GateReport build_gate_report_from_propagator(
    const ComplexMatrix& propagator, double unitarity_defect, bool stability_warning,
    int suggested_steps, const std::string& model_label, const FourLevelParams& params,
    const TimeGrid& grid, int q0, int q1, int phase_samples, double path_closure_tolerance,
    double endpoint_cap, double step_defect_limit, double offdiag_flag) {
  params.validate();
  grid.validate();

  GateReport report;
  report.model_label = model_label;
  report.propagator_unitarity_defect = unitarity_defect;
  report.stability_warning = stability_warning;
  report.suggested_steps = suggested_steps;

  // estimate 1: control-path line integral
  const BlochPath path = path_angles(params.schedule, grid.t0, grid.tf, phase_samples);
  const GeometricPhase solid = geometric_phase(path, path_closure_tolerance, endpoint_cap);
  report.gamma_solid_angle = solid.gamma;
  report.gamma_quadrature_error = solid.quadrature_error;
  report.path_closure_defect = solid.closure_defect;

  // estimate 2: dark-subspace parallel transport
  const DarkHolonomy holonomy = dark_subspace_propagator(params, grid, step_defect_limit);
  report.holonomy = holonomy.gate;
  report.transport_step_defect = holonomy.max_step_defect;
  const PhaseEstimate dark_phase = propagation_phase_gamma(
      holonomy.gate, params.schedule.chi, params.schedule.phi, offdiag_flag);
  report.gamma_dark_subspace = dark_phase.gamma;

  // estimate 3: the supplied end-to-end propagator
  const ExtractedGate extracted = extract_qubit_gate(propagator, q0, q1);
  report.propagated_raw = extracted.raw;
  report.propagated = extracted.projected;
  report.leakage = extracted.leakage;
  report.projection_defect = extracted.projection_defect;

  const PhaseEstimate prop_phase = propagation_phase_gamma(
      extracted.projected, params.schedule.chi, params.schedule.phi, offdiag_flag);
  report.gamma_propagation = prop_phase.gamma;
  report.propagation_offdiag = prop_phase.offdiag;
  report.propagation_phase_flagged = prop_phase.flagged;

  // closed-form target at the designed phase
  report.ideal = ideal_gate(params.schedule.chi, params.schedule.phi, report.gamma_solid_angle);

  report.fidelity_ideal_vs_propagated_raw = operator_fidelity(report.ideal, extracted.raw);
  report.fidelity_ideal_vs_propagated = operator_fidelity(report.ideal, extracted.projected);
  report.fidelity_ideal_vs_holonomy = operator_fidelity(report.ideal, holonomy.gate);
  report.fidelity_holonomy_vs_propagated =
      operator_fidelity(holonomy.gate, extracted.projected);
  return report;
}

GateReport build_gate_report(const HamiltonianModel& model, const FourLevelParams& params,
                             const TimeGrid& grid, int q0, int q1, int phase_samples,
                             const PropagationOptions& options, double path_closure_tolerance,
                             double endpoint_cap, double step_defect_limit,
                             double offdiag_flag) {
  const UnitaryResult propagated = propagate_unitary(model, grid, options);
  return build_gate_report_from_propagator(
      propagated.propagator, propagated.max_unitarity_defect, propagated.stability_warning,
      propagated.suggested_steps, model.label, params, grid, q0, q1, phase_samples,
      path_closure_tolerance, endpoint_cap, step_defect_limit, offdiag_flag);
}

}  // namespace nvholo
