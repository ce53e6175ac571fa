#pragma once

// Scenario configuration and runners behind the command-line front end.
//
// Configs are UTF-8 JSON with explicit unit suffixes ("MHz_angular", "us");
// they are validated structurally against the published schema (unknown keys
// rejected) and then semantically by the parser. Every scenario has an
// embedded default config, printable via the print-config verb and committed
// verbatim under configs/ so each canonical run is reproducible from a file.
//
// Exit-code contract of the front end: 0 = ran and passed its physics
// checks, 1 = ran but a physics check failed (or the numerics guard threw),
// 2 = configuration error (schema violation, unknown key, bad value).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvholo/model.hpp"
#include "nvholo/propagate.hpp"

namespace nvholo {

// configuration-domain failure: maps to exit code 2
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ScenarioKind { fig3, fig2, stirap, gate_report, check_dark, sweep };
enum class ModelKind { four_level, nine_level, lab_oracle };

std::string to_string(ScenarioKind kind);
std::string to_string(ModelKind kind);

struct ToleranceSet {
  double hermiticity = 1e-12;
  double unitarity = 1e-8;          // propagator defect ceiling
  double norm_drift = 1e-8;         // trajectory norm-drift ceiling
  double stability_threshold = 0.1; // dt * max||H|| warning level
  double path_closure = 1e-6;       // endpoint mixing-angle mismatch
  double endpoint_cap = 1e-3;       // absolute endpoint mixing-angle ceiling
  double step_defect_limit = 0.1;   // dark-transport overlap defect limit
  double offdiag_flag = 0.05;       // propagation-phase off-diagonal flag
  double kernel_residual = 1e-12;   // dark-state kernel residual ceiling
};

struct CheckSettings {
  int samples = 200;
  unsigned long long seed = 20260819;
  double window_t0 = -6.0;
  double window_tf = 6.0;
};

enum class SweepAxis { alpha, omega0, steps };

std::string to_string(SweepAxis axis);

struct SweepSettings {
  SweepAxis axis = SweepAxis::alpha;
  std::vector<double> values;  // already expanded (explicit list or linspace)
  bool auto_window = true;     // alpha axis: window follows 6/alpha, dt held fixed
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::fig3;
  ModelKind model = ModelKind::four_level;
  PulseSchedule pulse;
  double delta1 = 0.0;
  double delta2 = 0.0;
  bool detunings_explicit = false;  // false: deltas follow omega0 (also under sweeps)
  TimeGrid grid;
  std::string initial_state;        // per-model state label
  std::string csv_name;             // artifact names, joined to the output dir
  std::string report_name;
  ToleranceSet tolerances;
  std::optional<NineLevelParams> nine;  // fine structure (nine-level runs)
  double lab_omega3 = 5000.0;
  double lab_omega4 = 2500.0;
  CheckSettings check;
  std::optional<SweepSettings> sweep;
};

// parse + validate; throws ConfigError with diagnostics
ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path);

// embedded defaults (committed verbatim under configs/)
const std::vector<std::string>& default_config_names();
const std::string& default_config_text(const std::string& name);
// repo-relative path each embedded document is committed at
std::string default_config_relative_path(const std::string& name);
// embedded default for a scenario verb
const std::string& scenario_default_config(ScenarioKind kind);

// structural validation against a JSON-schema subset (type, enum, properties,
// required, additionalProperties, items, minItems/maxItems, minimum);
// returns human-readable violations, empty when the document conforms
std::vector<std::string> schema_violations(const std::string& schema_text,
                                           const std::string& document_text);

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

struct RunOutcome {
  bool passed = true;
  std::vector<std::string> failures;  // physics-check failures (exit 1)
  std::vector<std::string> notes;     // informational lines for stdout
  std::vector<std::string> artifacts; // paths written
};

RunOutcome run_fig3(const ScenarioConfig& config, const std::string& out_dir);
RunOutcome run_fig2(const ScenarioConfig& config, const std::string& out_dir);
RunOutcome run_stirap(const ScenarioConfig& config, const std::string& out_dir);
RunOutcome run_gate_report(const ScenarioConfig& config, const std::string& out_dir);
RunOutcome run_check_dark(const ScenarioConfig& config, const std::string& out_dir);
RunOutcome run_sweep(const ScenarioConfig& config, const std::string& out_dir);

// dispatch on config.scenario
RunOutcome run_scenario(const ScenarioConfig& config, const std::string& out_dir);

// helpers shared by runners, tests and the acceptance suite
FourLevelParams four_level_params_from(const ScenarioConfig& config);
NineLevelParams nine_level_params_from(const ScenarioConfig& config);
int initial_state_index(const ScenarioConfig& config);
PropagationOptions propagation_options_from(const ToleranceSet& tolerances);

}  // namespace nvholo
