#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "nvholo/emit.hpp"
#include "nvholo/gate_analysis.hpp"
#include "nvholo/scenario.hpp"

namespace nvholo {

namespace {

std::string join_out(const std::string& out_dir, const std::string& name) {
  if (out_dir.empty()) return name;
  return (std::filesystem::path(out_dir) / name).string();
}

void emit_matrix(JsonWriter& w, const Eigen::Matrix2cd& m) {
  w.begin_array();
  for (int r = 0; r < 2; ++r) {
    w.begin_array();
    for (int c = 0; c < 2; ++c)
      w.begin_array().value(m(r, c).real()).value(m(r, c).imag()).end_array();
    w.end_array();
  }
  w.end_array();
}

void emit_string_array(JsonWriter& w, const std::vector<std::string>& items) {
  w.begin_array();
  for (const auto& s : items) w.value(s);
  w.end_array();
}

struct LabOverlap {
  double frame_overlap_fidelity = 0.0;
  double carrier_to_rabi_ratio = 0.0;
  double gate_fidelity_ideal_vs_lab = 0.0;
};

std::string gate_report_json(const GateReport& report, const ScenarioConfig& config,
                             bool passed, const std::vector<std::string>& failures,
                             const std::vector<std::string>& notes,
                             const LabOverlap* lab) {
  JsonWriter w;
  w.begin_object();
  w.key("model").value(report.model_label);
  w.key("grid").begin_object();
  w.key("t0_us").value(config.grid.t0);
  w.key("tf_us").value(config.grid.tf);
  w.key("steps").value(config.grid.steps);
  w.key("substeps").value(config.grid.substeps);
  w.end_object();
  w.key("schedule").begin_object();
  w.key("kind").value("designed");
  w.key("chi_rad").value(config.pulse.chi);
  w.key("phi_rad").value(config.pulse.phi);
  w.key("omega0_MHz_angular").value(config.pulse.omega0);
  w.key("alpha_MHz_angular").value(config.pulse.alpha);
  w.end_object();
  w.key("gamma").begin_object();
  w.key("solid_angle_rad").value(report.gamma_solid_angle);
  w.key("quadrature_error_rad").value(report.gamma_quadrature_error);
  w.key("path_closure_defect").value(report.path_closure_defect);
  w.key("dark_subspace_rad").value(report.gamma_dark_subspace);
  w.key("propagation_rad").value(report.gamma_propagation);
  w.key("propagation_offdiag").value(report.propagation_offdiag);
  w.key("propagation_flagged").value(report.propagation_phase_flagged);
  w.end_object();
  w.key("gate").begin_object();
  w.key("ideal");
  emit_matrix(w, report.ideal);
  w.key("holonomy");
  emit_matrix(w, report.holonomy);
  w.key("propagated_raw");
  emit_matrix(w, report.propagated_raw);
  w.key("propagated");
  emit_matrix(w, report.propagated);
  w.end_object();
  w.key("fidelity").begin_object();
  w.key("ideal_vs_propagated_raw").value(report.fidelity_ideal_vs_propagated_raw);
  w.key("ideal_vs_propagated").value(report.fidelity_ideal_vs_propagated);
  w.key("ideal_vs_holonomy").value(report.fidelity_ideal_vs_holonomy);
  w.key("holonomy_vs_propagated").value(report.fidelity_holonomy_vs_propagated);
  w.end_object();
  w.key("diagnostics").begin_object();
  w.key("leakage").value(report.leakage);
  w.key("projection_defect").value(report.projection_defect);
  w.key("transport_step_defect").value(report.transport_step_defect);
  w.key("unitarity_defect").value(report.propagator_unitarity_defect);
  w.key("stability_warning").value(report.stability_warning);
  w.key("suggested_steps").value(report.suggested_steps);
  w.end_object();
  if (lab) {
    w.key("lab_overlap").begin_object();
    w.key("frame_overlap_fidelity").value(lab->frame_overlap_fidelity);
    w.key("carrier_to_rabi_ratio").value(lab->carrier_to_rabi_ratio);
    w.key("gate_fidelity_ideal_vs_lab").value(lab->gate_fidelity_ideal_vs_lab);
    w.end_object();
  }
  if (!notes.empty()) {
    w.key("notes");
    emit_string_array(w, notes);
  }
  w.key("pass").value(passed);
  w.key("failures");
  emit_string_array(w, failures);
  w.end_object();
  return w.str();
}

GateReport designed_gate_report(const HamiltonianModel& model, const ScenarioConfig& config,
                                int q0 = 0, int q1 = 1) {
  const FourLevelParams params = four_level_params_from(config);
  const ToleranceSet& tol = config.tolerances;
  return build_gate_report(model, params, config.grid, q0, q1, 20001,
                           propagation_options_from(tol), tol.path_closure,
                           tol.endpoint_cap, tol.step_defect_limit, tol.offdiag_flag);
}

std::string csv_from_trajectory(const Trajectory& trajectory,
                                const std::vector<std::string>& amplitude_headers) {
  std::vector<std::string> header;
  header.push_back("t_ns");
  for (const auto& h : amplitude_headers) header.push_back(h);
  CsvWriter csv(header);
  for (size_t k = 0; k < trajectory.times.size(); ++k) {
    std::vector<double> row;
    row.reserve(header.size());
    row.push_back(trajectory.times[k] * 1000.0);  // us -> ns for figure parity
    for (double a : trajectory.amplitude_norms[k]) row.push_back(a);
    csv.row(row);
  }
  return csv.str();
}

void note_gamma(RunOutcome& outcome, const GateReport& report) {
  outcome.notes.push_back(
      "gamma estimates (rad): solid-angle " + format_double(report.gamma_solid_angle) +
      ", dark-subspace " + format_double(report.gamma_dark_subspace) + ", propagation " +
      format_double(report.gamma_propagation));
  outcome.notes.push_back(
      "fidelity ideal vs propagated " + format_double(report.fidelity_ideal_vs_propagated) +
      ", ideal vs holonomy " + format_double(report.fidelity_ideal_vs_holonomy) +
      ", holonomy vs propagated " + format_double(report.fidelity_holonomy_vs_propagated));
}

}  // namespace

// ---------------------------------------------------------------------------
// fig3: four-level gate trajectory
// ---------------------------------------------------------------------------

RunOutcome run_fig3(const ScenarioConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const FourLevelParams params = four_level_params_from(config);
  const HamiltonianModel model = four_level_model(params);
  const StateVector initial = basis_state(4, initial_state_index(config));
  const PropagationOptions options = propagation_options_from(config.tolerances);

  const Trajectory trajectory = propagate_state(model, initial, config.grid, options);
  const std::string csv_path = join_out(out_dir, config.csv_name);
  write_text_file(csv_path,
                  csv_from_trajectory(trajectory, {"abs_c1", "abs_c2", "abs_c3", "abs_c4"}));
  outcome.artifacts.push_back(csv_path);

  const std::vector<double>& final_norms = trajectory.amplitude_norms.back();
  if (final_norms[2] > 1e-3 || final_norms[3] > 1e-3) {
    outcome.passed = false;
    outcome.failures.push_back("endpoint excited-state amplitudes (" +
                               format_double(final_norms[2]) + ", " +
                               format_double(final_norms[3]) + ") exceed 1e-3");
  }

  if (config.pulse.kind != EnvelopeKind::designed) {
    outcome.notes.push_back(
        "non-designed schedule: trajectory only, no gate report (the geometric-phase "
        "analysis applies to the designed closed path)");
    return outcome;
  }

  const GateReport report = designed_gate_report(model, config);

  // endpoint amplitude targets follow from the closed-form gate acting on the
  // starting basis state (reduces to 1/sqrt(2) at the canonical chi = -pi/4)
  const int start = initial_state_index(config);
  if (start == 0 || start == 1) {
    Eigen::Vector2cd in = Eigen::Vector2cd::Zero();
    in(start) = 1.0;
    const Eigen::Vector2cd expected = report.ideal * in;
    for (int i = 0; i < 2; ++i) {
      const double got = final_norms[static_cast<size_t>(i)];
      const double want = std::abs(expected(i));
      if (std::abs(got - want) > 0.01) {
        outcome.passed = false;
        outcome.failures.push_back("endpoint |c" + std::to_string(i + 1) + "| = " +
                                   format_double(got) + " deviates from the designed " +
                                   format_double(want) + " by more than 0.01");
      }
    }
  }

  const std::string report_path = join_out(out_dir, config.report_name);
  write_text_file(report_path, gate_report_json(report, config, outcome.passed,
                                                outcome.failures, {}, nullptr));
  outcome.artifacts.push_back(report_path);
  note_gamma(outcome, report);
  return outcome;
}

// ---------------------------------------------------------------------------
// fig2: nine-level validation trajectory
// ---------------------------------------------------------------------------

RunOutcome run_fig2(const ScenarioConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const NineLevelParams params = nine_level_params_from(config);
  const HamiltonianModel model = nine_level_model(params);
  const StateVector initial = basis_state(kNineDim, initial_state_index(config));
  const PropagationOptions options = propagation_options_from(config.tolerances);

  const Trajectory trajectory = propagate_state(model, initial, config.grid, options);

  // nine amplitude norms plus the circular superpositions of the E pairs
  std::vector<std::string> header;
  header.push_back("t_ns");
  for (int i = 0; i < kNineDim; ++i) header.push_back(std::string("abs_") + kNineStateNames[i]);
  header.insert(header.end(), {"abs_E_plus", "abs_E_minus", "abs_Ep_plus", "abs_Ep_minus"});
  CsvWriter csv(header);
  const cd half_i = cd(0.0, 1.0) / std::sqrt(2.0);
  for (size_t k = 0; k < trajectory.times.size(); ++k) {
    const StateVector& psi = trajectory.states[k];
    std::vector<double> row;
    row.push_back(trajectory.times[k] * 1000.0);
    for (int i = 0; i < kNineDim; ++i) row.push_back(std::abs(psi(i)));
    row.push_back(std::abs(psi(kExcitedEx) / std::sqrt(2.0) + half_i * psi(kExcitedEy)));
    row.push_back(std::abs(psi(kExcitedEx) / std::sqrt(2.0) - half_i * psi(kExcitedEy)));
    row.push_back(std::abs(psi(kExcitedEpx) / std::sqrt(2.0) + half_i * psi(kExcitedEpy)));
    row.push_back(std::abs(psi(kExcitedEpx) / std::sqrt(2.0) - half_i * psi(kExcitedEpy)));
    csv.row(row);
  }
  const std::string csv_path = join_out(out_dir, config.csv_name);
  write_text_file(csv_path, csv.str());
  outcome.artifacts.push_back(csv_path);

  // dominance: the Lambda-system states must tower over every other state
  std::array<double, kNineDim> peak{};
  for (const auto& norms : trajectory.amplitude_norms)
    for (int i = 0; i < kNineDim; ++i)
      peak[static_cast<size_t>(i)] = std::max(peak[static_cast<size_t>(i)], norms[static_cast<size_t>(i)]);
  const std::array<int, 4> lambda_states = {kGroundMinus1, kGroundPlus1, kExcitedA2,
                                            kExcitedA1};
  double lambda_floor = 1.0;
  for (int i : lambda_states) lambda_floor = std::min(lambda_floor, peak[static_cast<size_t>(i)]);
  for (int i = 0; i < kNineDim; ++i) {
    if (std::find(lambda_states.begin(), lambda_states.end(), i) != lambda_states.end())
      continue;
    if (peak[static_cast<size_t>(i)] >= lambda_floor) {
      outcome.passed = false;
      outcome.failures.push_back(std::string("dominance violated: peak |") +
                                 kNineStateNames[i] + "| = " +
                                 format_double(peak[static_cast<size_t>(i)]) +
                                 " reaches the weakest Lambda-state peak " +
                                 format_double(lambda_floor));
    }
  }

  double leakage_ceiling = 0.0;
  for (const auto& norms : trajectory.amplitude_norms) {
    const double qubit = norms[0] * norms[0] + norms[1] * norms[1];
    leakage_ceiling = std::max(leakage_ceiling, 1.0 - qubit);
  }
  outcome.notes.push_back("max population outside m_s = −1/+1 over the run: " +
                          format_double(leakage_ceiling));
  outcome.notes.push_back("peak amplitude norms: ms_minus1 " + format_double(peak[0]) +
                          ", ms_plus1 " + format_double(peak[1]) + ", A2 " +
                          format_double(peak[3]) + ", A1 " + format_double(peak[4]));
  return outcome;
}

// ---------------------------------------------------------------------------
// stirap: resonant transfer
// ---------------------------------------------------------------------------

RunOutcome run_stirap(const ScenarioConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const FourLevelParams params = four_level_params_from(config);
  const HamiltonianModel model = four_level_model(params);
  const StateVector initial = basis_state(4, initial_state_index(config));
  const PropagationOptions options = propagation_options_from(config.tolerances);

  const Trajectory trajectory = propagate_state(model, initial, config.grid, options);
  const std::string csv_path = join_out(out_dir, config.csv_name);
  write_text_file(csv_path,
                  csv_from_trajectory(trajectory, {"abs_c1", "abs_c2", "abs_c3", "abs_c4"}));
  outcome.artifacts.push_back(csv_path);

  const double transfer = std::pow(trajectory.amplitude_norms.back()[1], 2);
  if (transfer < 0.99) {
    outcome.passed = false;
    outcome.failures.push_back("final ground_2 population " + format_double(transfer) +
                               " below 0.99");
  }

  // scan the dark-dark nonadiabatic coupling across the window
  const int scan_points = std::min(config.grid.steps, 2000);
  const double h = config.grid.dt() / 10.0;
  double max_coupling = 0.0;
  double argmax_t = config.grid.t0;
  for (int k = 0; k <= scan_points; ++k) {
    const double t =
        config.grid.t0 + (config.grid.tf - config.grid.t0) * k / scan_points;
    const double magnitude = std::abs(nonadiabatic_coupling(params, t, h));
    if (magnitude > max_coupling) {
      max_coupling = magnitude;
      argmax_t = t;
    }
  }
  const bool resonant = config.pulse.omega0 == 0.0;
  if (resonant && max_coupling > 1e-10) {
    outcome.passed = false;
    outcome.failures.push_back("dark-dark coupling " + format_double(max_coupling) +
                               " at t = " + format_double(argmax_t) +
                               " exceeds 1e-10 despite zero two-photon detuning");
  }
  outcome.notes.push_back("transfer " + format_double(transfer) +
                          ", max |<D2|d/dt D1>| = " + format_double(max_coupling));

  JsonWriter w;
  w.begin_object();
  w.key("scenario").value("stirap");
  w.key("final_population_ground_2").value(transfer);
  w.key("max_dark_dark_coupling").value(max_coupling);
  w.key("coupling_argmax_us").value(argmax_t);
  w.key("coupling_scan_points").value(scan_points + 1);
  w.key("fd_half_width_us").value(h);
  w.key("resonant").value(resonant);
  w.key("pass").value(outcome.passed);
  w.key("failures");
  emit_string_array(w, outcome.failures);
  w.end_object();
  const std::string report_path = join_out(out_dir, config.report_name);
  write_text_file(report_path, w.str());
  outcome.artifacts.push_back(report_path);
  return outcome;
}

// ---------------------------------------------------------------------------
// check-dark: randomized kernel residuals
// ---------------------------------------------------------------------------

RunOutcome run_check_dark(const ScenarioConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const FourLevelParams params = four_level_params_from(config);

  // regime preconditions, reported individually
  const double detuning_mismatch = std::abs(params.delta1 - params.delta2);
  const double pump_scale_mismatch =
      std::abs(params.schedule.scale_p1 - params.schedule.scale_p2);
  const double stokes_scale_mismatch =
      std::abs(params.schedule.scale_s1 - params.schedule.scale_s2);
  const double regime_tolerance = 1e-9;
  if (detuning_mismatch > regime_tolerance) {
    outcome.passed = false;
    outcome.failures.push_back("dark-state regime requires delta1 = delta2; mismatch " +
                               format_double(detuning_mismatch));
  }
  if (pump_scale_mismatch > regime_tolerance) {
    outcome.passed = false;
    outcome.failures.push_back("dark-state regime requires equal pump tones; mismatch " +
                               format_double(pump_scale_mismatch));
  }
  if (stokes_scale_mismatch > regime_tolerance) {
    outcome.passed = false;
    outcome.failures.push_back("dark-state regime requires equal Stokes tones; mismatch " +
                               format_double(stokes_scale_mismatch));
  }

  std::mt19937_64 rng(config.check.seed);
  std::uniform_real_distribution<double> pick_time(config.check.window_t0,
                                                   config.check.window_tf);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es;
  double max_residual = 0.0;
  double argmax_t = config.check.window_t0;
  const double omega0 = 0.5 * (params.delta1 + params.delta2);
  for (int n = 0; n < config.check.samples; ++n) {
    const double t = pick_time(rng);
    const ComplexMatrix h = four_level_h(params, t);
    es.compute(h, Eigen::EigenvaluesOnly);
    const double h_scale = es.eigenvalues().cwiseAbs().maxCoeff();
    if (h_scale == 0.0) continue;  // H = 0: everything is trivially in the kernel
    const auto [wp1, wp2, ws1, ws2] = params.rabi(t);
    (void)wp2;
    (void)ws2;
    const DarkPair dark = dark_states(wp1, ws1, omega0);
    const double residual =
        std::max((h * dark.d1).norm(), (h * dark.d2).norm()) / h_scale;
    if (residual > max_residual) {
      max_residual = residual;
      argmax_t = t;
    }
  }
  if (max_residual > config.tolerances.kernel_residual) {
    outcome.passed = false;
    outcome.failures.push_back("max kernel residual " + format_double(max_residual) +
                               " at t = " + format_double(argmax_t) + " exceeds " +
                               format_double(config.tolerances.kernel_residual));
  }
  outcome.notes.push_back("max relative kernel residual over " +
                          std::to_string(config.check.samples) + " samples: " +
                          format_double(max_residual));

  JsonWriter w;
  w.begin_object();
  w.key("scenario").value("check_dark");
  w.key("samples").value(config.check.samples);
  w.key("seed").value(static_cast<unsigned long long>(config.check.seed));
  w.key("window_us").begin_array().value(config.check.window_t0).value(
      config.check.window_tf).end_array();
  w.key("regime").begin_object();
  w.key("detuning_mismatch").value(detuning_mismatch);
  w.key("pump_scale_mismatch").value(pump_scale_mismatch);
  w.key("stokes_scale_mismatch").value(stokes_scale_mismatch);
  w.end_object();
  w.key("max_relative_residual").value(max_residual);
  w.key("residual_argmax_us").value(argmax_t);
  w.key("kernel_tolerance").value(config.tolerances.kernel_residual);
  w.key("pass").value(outcome.passed);
  w.key("failures");
  emit_string_array(w, outcome.failures);
  w.end_object();
  const std::string report_path = join_out(out_dir, config.report_name);
  write_text_file(report_path, w.str());
  outcome.artifacts.push_back(report_path);
  return outcome;
}

// ---------------------------------------------------------------------------
// gate-report
// ---------------------------------------------------------------------------

RunOutcome run_gate_report(const ScenarioConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const FourLevelParams params = four_level_params_from(config);
  const ToleranceSet& tol = config.tolerances;
  const PropagationOptions options = propagation_options_from(tol);

  GateReport report;
  LabOverlap lab;
  const LabOverlap* lab_ptr = nullptr;
  std::vector<std::string> notes;

  switch (config.model) {
    case ModelKind::four_level: {
      report = designed_gate_report(four_level_model(params), config);
      if (report.fidelity_ideal_vs_propagated < 0.999) {
        outcome.passed = false;
        outcome.failures.push_back("four-level fidelity " +
                                   format_double(report.fidelity_ideal_vs_propagated) +
                                   " below 0.999");
      }
      break;
    }
    case ModelKind::nine_level: {
      const NineLevelParams nine = nine_level_params_from(config);
      report = designed_gate_report(nine_level_model(nine), config, kGroundMinus1,
                                    kGroundPlus1);
      report.model_label = "nine_level";
      notes.push_back(
          "nine-level fidelity is conditional on the configured fine-structure values "
          "(see the nine_level.provenance config field); it is reported, not asserted");
      break;
    }
    case ModelKind::lab_oracle: {
      const LabCarriers carriers = LabCarriers::for_detunings(
          params.delta1, params.delta2, config.lab_omega3, config.lab_omega4);
      const UnitaryResult lab_run =
          propagate_unitary(lab_frame_model(params, carriers), config.grid, options);
      const ComplexMatrix rotating =
          lab_to_rotating_frame(params, carriers, config.grid.tf) * lab_run.propagator *
          lab_to_rotating_frame(params, carriers, config.grid.t0).adjoint();
      report = build_gate_report_from_propagator(
          rotating, lab_run.max_unitarity_defect, lab_run.stability_warning,
          lab_run.suggested_steps, "lab_oracle", params, config.grid, 0, 1, 20001,
          tol.path_closure, tol.endpoint_cap, tol.step_defect_limit, tol.offdiag_flag);

      // reference propagation of the co-rotating model on the same window
      TimeGrid reference_grid = config.grid;
      reference_grid.substeps = 1;
      const UnitaryResult reference =
          propagate_unitary(four_level_model(params), reference_grid, options);
      lab.frame_overlap_fidelity =
          std::abs((rotating.adjoint() * reference.propagator).trace()) / 4.0;
      lab.gate_fidelity_ideal_vs_lab = report.fidelity_ideal_vs_propagated;

      double max_rabi = 0.0;
      for (int k = 0; k <= 1000; ++k) {
        const double t =
            config.grid.t0 + (config.grid.tf - config.grid.t0) * k / 1000.0;
        const RabiPair r = pump_stokes(config.pulse, t);
        max_rabi = std::max({max_rabi, std::abs(r.omega_p), std::abs(r.omega_s)});
      }
      const double min_carrier =
          std::min({carriers.nu_p1, carriers.nu_p2, carriers.nu_s1, carriers.nu_s2});
      lab.carrier_to_rabi_ratio = max_rabi > 0.0 ? min_carrier / max_rabi : 0.0;
      lab_ptr = &lab;

      if (lab.frame_overlap_fidelity < 0.999) {
        outcome.passed = false;
        outcome.failures.push_back("lab-frame/rotating-frame overlap " +
                                   format_double(lab.frame_overlap_fidelity) +
                                   " below 0.999");
      }
      if (report.fidelity_ideal_vs_propagated < 0.999) {
        outcome.passed = false;
        outcome.failures.push_back("lab-derived gate fidelity " +
                                   format_double(report.fidelity_ideal_vs_propagated) +
                                   " below 0.999");
      }
      notes.push_back("carrier-to-peak-Rabi ratio " +
                      format_double(lab.carrier_to_rabi_ratio));
      break;
    }
  }

  const std::string report_path = join_out(out_dir, config.report_name);
  write_text_file(report_path, gate_report_json(report, config, outcome.passed,
                                                outcome.failures, notes, lab_ptr));
  outcome.artifacts.push_back(report_path);
  for (const auto& n : notes) outcome.notes.push_back(n);
  note_gamma(outcome, report);
  if (config.model == ModelKind::nine_level)
    outcome.notes.push_back("nine-level fidelity ideal vs propagated (reported): " +
                            format_double(report.fidelity_ideal_vs_propagated));
  return outcome;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

RunOutcome run_sweep(const ScenarioConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  if (!config.sweep) throw ConfigError("config error: sweep scenario without sweep block");
  const SweepSettings& sweep = *config.sweep;

  std::vector<std::string> header;
  header.push_back(sweep.axis == SweepAxis::alpha    ? "alpha_MHz_angular"
                   : sweep.axis == SweepAxis::omega0 ? "omega0_MHz_angular"
                                                     : "steps");
  for (const char* name :
       {"grid_steps", "fidelity_ideal_vs_propagated", "infidelity", "leakage",
        "gamma_solid_angle_rad", "gamma_dark_subspace_rad", "gamma_propagation_rad",
        "path_closure_defect", "unitarity_defect"})
    header.push_back(name);
  CsvWriter csv(header);

  const double base_dt = config.grid.dt();
  for (double value : sweep.values) {
    ScenarioConfig point = config;
    switch (sweep.axis) {
      case SweepAxis::alpha:
        point.pulse.alpha = value;
        if (sweep.auto_window) {
          // keep the integration step fixed while the window tracks 6/alpha
          const double half = point.pulse.default_half_window();
          point.grid.t0 = -half;
          point.grid.tf = half;
          point.grid.steps =
              std::max(2, static_cast<int>(std::ceil(2.0 * half / base_dt)));
        }
        break;
      case SweepAxis::omega0:
        point.pulse.omega0 = value;
        if (!point.detunings_explicit) {
          point.delta1 = value;
          point.delta2 = value;
        }
        break;
      case SweepAxis::steps:
        point.grid.steps = static_cast<int>(value);
        break;
    }
    const FourLevelParams params = four_level_params_from(point);
    const GateReport report = designed_gate_report(four_level_model(params), point);
    csv.row({value, static_cast<double>(point.grid.steps),
             report.fidelity_ideal_vs_propagated,
             1.0 - report.fidelity_ideal_vs_propagated, report.leakage,
             report.gamma_solid_angle, report.gamma_dark_subspace,
             report.gamma_propagation, report.path_closure_defect,
             report.propagator_unitarity_defect});
    outcome.notes.push_back(header[0] + " = " + format_double(value) + ": infidelity " +
                            format_double(1.0 - report.fidelity_ideal_vs_propagated) +
                            ", leakage " + format_double(report.leakage));
  }

  const std::string csv_path = join_out(out_dir, config.csv_name);
  write_text_file(csv_path, csv.str());
  outcome.artifacts.push_back(csv_path);
  return outcome;
}

RunOutcome run_scenario(const ScenarioConfig& config, const std::string& out_dir) {
  switch (config.scenario) {
    case ScenarioKind::fig3: return run_fig3(config, out_dir);
    case ScenarioKind::fig2: return run_fig2(config, out_dir);
    case ScenarioKind::stirap: return run_stirap(config, out_dir);
    case ScenarioKind::gate_report: return run_gate_report(config, out_dir);
    case ScenarioKind::check_dark: return run_check_dark(config, out_dir);
    case ScenarioKind::sweep: return run_sweep(config, out_dir);
  }
  throw ConfigError("config error: unhandled scenario");
}

}  // namespace nvholo
