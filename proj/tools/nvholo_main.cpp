// Command-line front end for the holonomic-gate simulator.
//
// Verbs: fig2, fig3, stirap, gate-report, sweep, check-dark, print-config.
// Exit codes: 0 = ran and passed, 1 = physics-check failure (or a numerics
// guard fired), 2 = configuration error.

#include <clocale>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nvholo/scenario.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  int steps = 0;       // 0: keep the config's step count
  long long seed = -1; // <0: keep the config's seed
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "JSON config path (defaults to the embedded scenario config)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out_dir, "output directory for CSV/JSON artifacts")
      ->capture_default_str();
  cmd->add_option("--steps", flags.steps, "override the grid step count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", flags.seed,
                  "override the RNG seed (randomized property checks only)")
      ->check(CLI::NonNegativeNumber);
}

int run_verb(nvholo::ScenarioKind kind, const CommonFlags& flags) {
  nvholo::ScenarioConfig config =
      flags.config_path.empty()
          ? nvholo::parse_scenario_config(nvholo::scenario_default_config(kind))
          : nvholo::load_scenario_config(flags.config_path);
  if (config.scenario != kind)
    throw nvholo::ConfigError("config error: config declares scenario \"" +
                              nvholo::to_string(config.scenario) + "\" but the \"" +
                              nvholo::to_string(kind) + "\" verb was invoked");
  if (flags.steps > 0) {
    config.grid.steps = flags.steps;
    config.grid.validate();
  }
  if (flags.seed >= 0) config.check.seed = static_cast<unsigned long long>(flags.seed);

  const nvholo::RunOutcome outcome = nvholo::run_scenario(config, flags.out_dir);
  for (const auto& note : outcome.notes) std::cout << note << "\n";
  for (const auto& artifact : outcome.artifacts) std::cout << "wrote " << artifact << "\n";
  if (outcome.passed) {
    std::cout << nvholo::to_string(kind) << ": PASS\n";
    return 0;
  }
  for (const auto& failure : outcome.failures)
    std::cout << "FAIL: " << failure << "\n";
  std::cout << nvholo::to_string(kind) << ": FAIL\n";
  return 1;
}

int print_config(const std::string& name) {
  if (name.empty()) {
    std::cout << "available configs (print-config NAME):\n";
    for (const auto& candidate : nvholo::default_config_names())
      std::cout << "  " << candidate << "  -> "
                << nvholo::default_config_relative_path(candidate) << "\n";
    return 0;
  }
  std::cout << nvholo::default_config_text(name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");  // deterministic "." decimal everywhere

  CLI::App app{"holonomic single-qubit gate simulator (four/nine-level Lambda system)"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_name;

  struct Verb {
    const char* name;
    const char* description;
    nvholo::ScenarioKind kind;
  };
  const Verb verbs[] = {
      {"fig3", "four-level gate trajectory and gate report", nvholo::ScenarioKind::fig3},
      {"fig2", "nine-level validation trajectory", nvholo::ScenarioKind::fig2},
      {"stirap", "resonant population-transfer run", nvholo::ScenarioKind::stirap},
      {"gate-report", "three-way gate cross-validation report",
       nvholo::ScenarioKind::gate_report},
      {"sweep", "parameter sweep of gate reports", nvholo::ScenarioKind::sweep},
      {"check-dark", "randomized dark-state kernel residual check",
       nvholo::ScenarioKind::check_dark},
  };
  for (const Verb& verb : verbs) {
    CLI::App* cmd = app.add_subcommand(verb.name, verb.description);
    add_common_flags(cmd, flags);
    const nvholo::ScenarioKind kind = verb.kind;
    cmd->callback([kind, &flags] {
      const int code = run_verb(kind, flags);
      if (code != 0) throw CLI::RuntimeError(code);
    });
  }

  CLI::App* print_cmd =
      app.add_subcommand("print-config", "print an embedded default config or schema");
  print_cmd->add_option("name", config_name,
                        "config name (omit to list the available names)");
  print_cmd->callback([&config_name] { print_config(config_name); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();  // physics-check failure propagated from a verb
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // malformed invocation is a configuration error
  } catch (const nvholo::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
