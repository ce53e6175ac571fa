#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nlohmann/json.hpp"
#include "nvholo/scenario.hpp"

namespace nvholo {

using nlohmann::json;

// ---------------------------------------------------------------------------
// enum names
// ---------------------------------------------------------------------------

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::fig3: return "fig3";
    case ScenarioKind::fig2: return "fig2";
    case ScenarioKind::stirap: return "stirap";
    case ScenarioKind::gate_report: return "gate_report";
    case ScenarioKind::check_dark: return "check_dark";
    case ScenarioKind::sweep: return "sweep";
  }
  return "?";
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::four_level: return "four_level";
    case ModelKind::nine_level: return "nine_level";
    case ModelKind::lab_oracle: return "lab_oracle";
  }
  return "?";
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::omega0: return "omega0";
    case SweepAxis::steps: return "steps";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// embedded default configs (committed verbatim under configs/)
// ---------------------------------------------------------------------------

namespace {

const std::string kNineLevelBlock = R"JSON(  "nine_level": {
    "d_gs_MHz_angular": 2870.0,
    "excited_MHz_angular": {
      "A2": 7350.0,
      "A1": 4250.0,
      "Ex": -4860.0,
      "Ey": -4860.0,
      "Epx": -950.0,
      "Epy": -950.0
    },
    "provenance": "Level positions relative to the excited-manifold centroid assembled from the axial spin-orbit and spin-spin parameters tabulated in Batalov et al., Phys. Rev. Lett. 102, 195506 (2009) and Doherty et al., Phys. Rep. 528, 1 (2013): A2 at +7.35 GHz, A1 at +4.25 GHz, Ex/Ey at -4.86 GHz, E'x/E'y at -0.95 GHz; ground zero-field splitting 2.87 GHz. All frequencies quoted as angular rad/us (1 MHz = 1 rad/us convention used throughout this project)."
  })JSON";

const std::string kDesignedPulseBlock = R"JSON(  "pulse": {
    "kind": "designed",
    "chi_rad": -0.7853981633974483,
    "phi_rad": 0.0,
    "omega0_MHz_angular": 20.0,
    "alpha_MHz_angular": 1.0
  })JSON";

std::string fig3_text() {
  return std::string("{\n  \"scenario\": \"fig3\",\n  \"model\": \"four_level\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "grid": {
    "t0_us": -6.0,
    "tf_us": 6.0,
    "steps": 24000,
    "substeps": 1
  },
  "initial_state": "ground_1",
  "output": {
    "csv": "fig3.csv",
    "report": "fig3_report.json"
  }
}
)JSON";
}

std::string fig2_text() {
  return std::string(R"JSON({
  "scenario": "fig2",
  "model": "nine_level",
  "pulse": {
    "kind": "constant",
    "omega0_MHz_angular": 10.0,
    "omega_p_MHz_angular": 14.0,
    "omega_s_MHz_angular": 14.0
  },
  "grid": {
    "t0_us": 0.0,
    "tf_us": 0.4,
    "steps": 2000,
    "substeps": 25
  },
  "initial_state": "ms_minus1",
  "output": {
    "csv": "fig2.csv"
  },
)JSON") + kNineLevelBlock + "\n}\n";
}

std::string stirap_text() {
  return R"JSON({
  "scenario": "stirap",
  "model": "four_level",
  "pulse": {
    "kind": "gaussian_stirap",
    "omega0_MHz_angular": 0.0,
    "pump": {
      "amplitude_MHz_angular": 20.0,
      "center_us": 1.2,
      "width_us": 2.0
    },
    "stokes": {
      "amplitude_MHz_angular": 20.0,
      "center_us": -1.2,
      "width_us": 2.0
    }
  },
  "grid": {
    "t0_us": -8.0,
    "tf_us": 8.0,
    "steps": 16000,
    "substeps": 1
  },
  "initial_state": "ground_1",
  "output": {
    "csv": "stirap.csv",
    "report": "stirap_report.json"
  }
}
)JSON";
}

std::string gate_report_four_level_text() {
  return std::string("{\n  \"scenario\": \"gate_report\",\n  \"model\": \"four_level\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "grid": {
    "t0_us": -6.0,
    "tf_us": 6.0,
    "steps": 24000,
    "substeps": 1
  },
  "output": {
    "report": "gate_report_four_level.json"
  }
}
)JSON";
}

std::string gate_report_nine_level_text() {
  return std::string("{\n  \"scenario\": \"gate_report\",\n  \"model\": \"nine_level\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "grid": {
    "t0_us": -6.0,
    "tf_us": 6.0,
    "steps": 24000,
    "substeps": 60
  },
  "output": {
    "report": "gate_report_nine_level.json"
  },
)JSON" + kNineLevelBlock + "\n}\n";
}

std::string gate_report_lab_text() {
  return std::string("{\n  \"scenario\": \"gate_report\",\n  \"model\": \"lab_oracle\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "grid": {
    "t0_us": -6.0,
    "tf_us": 6.0,
    "steps": 24000,
    "substeps": 30
  },
  "lab": {
    "omega3_MHz_angular": 5000.0,
    "omega4_MHz_angular": 2500.0
  },
  "output": {
    "report": "gate_report_lab.json"
  }
}
)JSON";
}

std::string check_dark_text() {
  return std::string("{\n  \"scenario\": \"check_dark\",\n  \"model\": \"four_level\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "check": {
    "samples": 200,
    "seed": 20260819,
    "window_t0_us": -6.0,
    "window_tf_us": 6.0
  },
  "output": {
    "report": "check_dark_report.json"
  }
}
)JSON";
}

std::string sweep_alpha_text() {
  return std::string("{\n  \"scenario\": \"sweep\",\n  \"model\": \"four_level\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "grid": {
    "t0_us": -6.0,
    "tf_us": 6.0,
    "steps": 24000,
    "substeps": 1
  },
  "sweep": {
    "axis": "alpha",
    "values_MHz_angular": [4.0, 2.0, 1.0, 0.5],
    "auto_window": true
  },
  "output": {
    "csv": "sweep_alpha.csv"
  }
}
)JSON";
}

std::string sweep_steps_text() {
  return std::string("{\n  \"scenario\": \"sweep\",\n  \"model\": \"four_level\",\n") +
         kDesignedPulseBlock + R"JSON(,
  "grid": {
    "t0_us": -6.0,
    "tf_us": 6.0,
    "steps": 24000,
    "substeps": 1
  },
  "sweep": {
    "axis": "steps",
    "values": [6000, 12000, 24000],
    "auto_window": false
  },
  "output": {
    "csv": "sweep_steps.csv"
  }
}
)JSON";
}

std::string scenario_schema_text() {
  return R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "Scenario configuration",
  "description": "All frequency-like quantities are angular frequencies in rad/us (suffix MHz_angular, with the 1 MHz = 1 rad/us convention); times are in us. Structural schema: kind-specific pulse requirements and cross-field rules are enforced by the parser on top of this document.",
  "type": "object",
  "additionalProperties": false,
  "required": ["scenario", "pulse"],
  "properties": {
    "scenario": {
      "type": "string",
      "enum": ["fig3", "fig2", "stirap", "gate_report", "check_dark", "sweep"]
    },
    "model": {
      "type": "string",
      "enum": ["four_level", "nine_level", "lab_oracle"]
    },
    "pulse": {
      "type": "object",
      "additionalProperties": false,
      "required": ["kind"],
      "properties": {
        "kind": {
          "type": "string",
          "enum": ["designed", "gaussian_stirap", "constant"]
        },
        "chi_rad": { "type": "number" },
        "phi_rad": { "type": "number" },
        "omega0_MHz_angular": { "type": "number", "minimum": 0 },
        "alpha_MHz_angular": { "type": "number" },
        "omega_p_MHz_angular": { "type": "number" },
        "omega_s_MHz_angular": { "type": "number" },
        "pump": {
          "type": "object",
          "additionalProperties": false,
          "required": ["amplitude_MHz_angular", "center_us", "width_us"],
          "properties": {
            "amplitude_MHz_angular": { "type": "number" },
            "center_us": { "type": "number" },
            "width_us": { "type": "number" }
          }
        },
        "stokes": {
          "type": "object",
          "additionalProperties": false,
          "required": ["amplitude_MHz_angular", "center_us", "width_us"],
          "properties": {
            "amplitude_MHz_angular": { "type": "number" },
            "center_us": { "type": "number" },
            "width_us": { "type": "number" }
          }
        }
      }
    },
    "detunings": {
      "type": "object",
      "additionalProperties": false,
      "required": ["delta1_MHz_angular", "delta2_MHz_angular"],
      "properties": {
        "delta1_MHz_angular": { "type": "number" },
        "delta2_MHz_angular": { "type": "number" }
      }
    },
    "grid": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "t0_us": { "type": "number" },
        "tf_us": { "type": "number" },
        "steps": { "type": "integer", "minimum": 2 },
        "substeps": { "type": "integer", "minimum": 1 }
      }
    },
    "initial_state": { "type": "string" },
    "output": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "csv": { "type": "string" },
        "report": { "type": "string" }
      }
    },
    "tolerances": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "hermiticity": { "type": "number" },
        "unitarity": { "type": "number" },
        "norm_drift": { "type": "number" },
        "stability_threshold": { "type": "number" },
        "path_closure": { "type": "number" },
        "endpoint_cap": { "type": "number" },
        "step_defect_limit": { "type": "number" },
        "offdiag_flag": { "type": "number" },
        "kernel_residual": { "type": "number" }
      }
    },
    "nine_level": {
      "type": "object",
      "additionalProperties": false,
      "required": ["d_gs_MHz_angular", "excited_MHz_angular"],
      "properties": {
        "d_gs_MHz_angular": { "type": "number", "minimum": 0 },
        "excited_MHz_angular": {
          "type": "object",
          "additionalProperties": false,
          "required": ["A2", "A1", "Ex", "Ey", "Epx", "Epy"],
          "properties": {
            "A2": { "type": "number" },
            "A1": { "type": "number" },
            "Ex": { "type": "number" },
            "Ey": { "type": "number" },
            "Epx": { "type": "number" },
            "Epy": { "type": "number" }
          }
        },
        "provenance": { "type": "string" }
      }
    },
    "lab": {
      "type": "object",
      "additionalProperties": false,
      "required": ["omega3_MHz_angular", "omega4_MHz_angular"],
      "properties": {
        "omega3_MHz_angular": { "type": "number" },
        "omega4_MHz_angular": { "type": "number" }
      }
    },
    "check": {
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "samples": { "type": "integer", "minimum": 1 },
        "seed": { "type": "integer", "minimum": 0 },
        "window_t0_us": { "type": "number" },
        "window_tf_us": { "type": "number" }
      }
    },
    "sweep": {
      "type": "object",
      "additionalProperties": false,
      "required": ["axis"],
      "properties": {
        "axis": {
          "type": "string",
          "enum": ["alpha", "omega0", "steps"]
        },
        "values_MHz_angular": {
          "type": "array",
          "minItems": 1,
          "items": { "type": "number" }
        },
        "values": {
          "type": "array",
          "minItems": 1,
          "items": { "type": "integer" }
        },
        "linspace_MHz_angular": {
          "type": "object",
          "additionalProperties": false,
          "required": ["from", "to", "count"],
          "properties": {
            "from": { "type": "number" },
            "to": { "type": "number" },
            "count": { "type": "integer", "minimum": 1 }
          }
        },
        "auto_window": { "type": "boolean" }
      }
    }
  }
}
)JSON";
}

std::string gate_report_schema_text() {
  const std::string matrix = R"JSON({
      "type": "array",
      "minItems": 2,
      "maxItems": 2,
      "items": {
        "type": "array",
        "minItems": 2,
        "maxItems": 2,
        "items": {
          "type": "array",
          "minItems": 2,
          "maxItems": 2,
          "items": { "type": "number" }
        }
      }
    })JSON";
  return std::string(R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "Gate report",
  "description": "2x2 complex matrices are row-major arrays of [re, im] pairs; angles in rad; frequencies as angular rad/us.",
  "type": "object",
  "additionalProperties": false,
  "required": ["model", "grid", "schedule", "gamma", "gate", "fidelity", "diagnostics", "pass", "failures"],
  "properties": {
    "model": {
      "type": "string",
      "enum": ["four_level", "nine_level", "lab_oracle"]
    },
    "grid": {
      "type": "object",
      "additionalProperties": false,
      "required": ["t0_us", "tf_us", "steps", "substeps"],
      "properties": {
        "t0_us": { "type": "number" },
        "tf_us": { "type": "number" },
        "steps": { "type": "integer" },
        "substeps": { "type": "integer" }
      }
    },
    "schedule": {
      "type": "object",
      "additionalProperties": false,
      "required": ["kind", "chi_rad", "phi_rad", "omega0_MHz_angular", "alpha_MHz_angular"],
      "properties": {
        "kind": { "type": "string" },
        "chi_rad": { "type": "number" },
        "phi_rad": { "type": "number" },
        "omega0_MHz_angular": { "type": "number" },
        "alpha_MHz_angular": { "type": "number" }
      }
    },
    "gamma": {
      "type": "object",
      "additionalProperties": false,
      "required": ["solid_angle_rad", "quadrature_error_rad", "path_closure_defect", "dark_subspace_rad", "propagation_rad", "propagation_offdiag", "propagation_flagged"],
      "properties": {
        "solid_angle_rad": { "type": "number" },
        "quadrature_error_rad": { "type": "number" },
        "path_closure_defect": { "type": "number" },
        "dark_subspace_rad": { "type": "number" },
        "propagation_rad": { "type": "number" },
        "propagation_offdiag": { "type": "number" },
        "propagation_flagged": { "type": "boolean" }
      }
    },
    "gate": {
      "type": "object",
      "additionalProperties": false,
      "required": ["ideal", "holonomy", "propagated_raw", "propagated"],
      "properties": {
        "ideal": )JSON") + matrix + R"JSON(,
        "holonomy": )JSON" + matrix + R"JSON(,
        "propagated_raw": )JSON" + matrix + R"JSON(,
        "propagated": )JSON" + matrix + R"JSON(
      }
    },
    "fidelity": {
      "type": "object",
      "additionalProperties": false,
      "required": ["ideal_vs_propagated_raw", "ideal_vs_propagated", "ideal_vs_holonomy", "holonomy_vs_propagated"],
      "properties": {
        "ideal_vs_propagated_raw": { "type": "number" },
        "ideal_vs_propagated": { "type": "number" },
        "ideal_vs_holonomy": { "type": "number" },
        "holonomy_vs_propagated": { "type": "number" }
      }
    },
    "diagnostics": {
      "type": "object",
      "additionalProperties": false,
      "required": ["leakage", "projection_defect", "transport_step_defect", "unitarity_defect", "stability_warning", "suggested_steps"],
      "properties": {
        "leakage": { "type": "number" },
        "projection_defect": { "type": "number" },
        "transport_step_defect": { "type": "number" },
        "unitarity_defect": { "type": "number" },
        "stability_warning": { "type": "boolean" },
        "suggested_steps": { "type": "integer" }
      }
    },
    "lab_overlap": {
      "type": "object",
      "additionalProperties": false,
      "required": ["frame_overlap_fidelity", "carrier_to_rabi_ratio", "gate_fidelity_ideal_vs_lab"],
      "properties": {
        "frame_overlap_fidelity": { "type": "number" },
        "carrier_to_rabi_ratio": { "type": "number" },
        "gate_fidelity_ideal_vs_lab": { "type": "number" }
      }
    },
    "notes": {
      "type": "array",
      "items": { "type": "string" }
    },
    "pass": { "type": "boolean" },
    "failures": {
      "type": "array",
      "items": { "type": "string" }
    }
  }
}
)JSON";
}

const std::map<std::string, std::string>& embedded_documents() {
  static const std::map<std::string, std::string> docs = {
      {"fig3", fig3_text()},
      {"fig2", fig2_text()},
      {"stirap", stirap_text()},
      {"gate_report_four_level", gate_report_four_level_text()},
      {"gate_report_nine_level", gate_report_nine_level_text()},
      {"gate_report_lab", gate_report_lab_text()},
      {"check_dark", check_dark_text()},
      {"sweep_alpha", sweep_alpha_text()},
      {"sweep_steps", sweep_steps_text()},
      {"schema/scenario_config", scenario_schema_text()},
      {"schema/gate_report", gate_report_schema_text()},
  };
  return docs;
}

}  // namespace

const std::vector<std::string>& default_config_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : embedded_documents()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::string& default_config_text(const std::string& name) {
  const auto& docs = embedded_documents();
  const auto it = docs.find(name);
  if (it == docs.end())
    throw ConfigError("unknown config name '" + name +
                      "' (run print-config with no name to list the available ones)");
  return it->second;
}

std::string default_config_relative_path(const std::string& name) {
  if (name == "schema/scenario_config") return "configs/schema/scenario_config.schema.json";
  if (name == "schema/gate_report") return "configs/schema/gate_report.schema.json";
  default_config_text(name);  // throws for unknown names
  return "configs/" + name + ".json";
}

const std::string& scenario_default_config(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::fig3: return default_config_text("fig3");
    case ScenarioKind::fig2: return default_config_text("fig2");
    case ScenarioKind::stirap: return default_config_text("stirap");
    case ScenarioKind::gate_report: return default_config_text("gate_report_four_level");
    case ScenarioKind::check_dark: return default_config_text("check_dark");
    case ScenarioKind::sweep: return default_config_text("sweep_alpha");
  }
  throw ConfigError("unknown scenario kind");
}

// ---------------------------------------------------------------------------
// structural schema validation (subset: type, enum, properties, required,
// additionalProperties:false, items, minItems, maxItems, minimum)
// ---------------------------------------------------------------------------

namespace {

bool type_matches(const json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "boolean") return doc.is_boolean();
  if (type == "integer") return doc.is_number_integer();
  if (type == "number") return doc.is_number();
  return false;
}

void validate_node(const json& schema, const json& doc, const std::string& path,
                   std::vector<std::string>& violations) {
  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    if (!type_matches(doc, type)) {
      violations.push_back(path + ": expected " + type + ", got " +
                           std::string(doc.type_name()));
      return;  // deeper checks are meaningless on the wrong type
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"])
      if (candidate == doc) found = true;
    if (!found) {
      std::string allowed;
      for (const auto& candidate : schema["enum"]) {
        if (!allowed.empty()) allowed += ", ";
        allowed += candidate.dump();
      }
      violations.push_back(path + ": value " + doc.dump() + " not one of [" + allowed + "]");
    }
  }
  if (schema.contains("minimum") && doc.is_number()) {
    if (doc.get<double>() < schema["minimum"].get<double>())
      violations.push_back(path + ": value " + doc.dump() + " below minimum " +
                           schema["minimum"].dump());
  }
  if (doc.is_object()) {
    const json properties =
        schema.contains("properties") ? schema["properties"] : json::object();
    if (schema.contains("required"))
      for (const auto& name : schema["required"])
        if (!doc.contains(name.get<std::string>()))
          violations.push_back(path + ": missing required key \"" + name.get<std::string>() +
                               "\"");
    const bool closed = schema.contains("additionalProperties") &&
                        schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    for (const auto& [key, child] : doc.items()) {
      if (properties.contains(key)) {
        validate_node(properties[key], child, path + "." + key, violations);
      } else if (closed) {
        violations.push_back(path + ": unknown key \"" + key + "\"");
      }
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<size_t>())
      violations.push_back(path + ": fewer than " + schema["minItems"].dump() + " items");
    if (schema.contains("maxItems") && doc.size() > schema["maxItems"].get<size_t>())
      violations.push_back(path + ": more than " + schema["maxItems"].dump() + " items");
    if (schema.contains("items")) {
      for (size_t i = 0; i < doc.size(); ++i)
        validate_node(schema["items"], doc[i], path + "[" + std::to_string(i) + "]",
                      violations);
    }
  }
}

json parse_json_or_throw(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> schema_violations(const std::string& schema_text,
                                           const std::string& document_text) {
  const json schema = parse_json_or_throw(schema_text, "schema parse error");
  const json doc = parse_json_or_throw(document_text, "document parse error");
  std::vector<std::string> violations;
  validate_node(schema, doc, "$", violations);
  return violations;
}

// ---------------------------------------------------------------------------
// semantic parsing
// ---------------------------------------------------------------------------

namespace {

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return obj[key].get<double>();
}

void reject_keys(const json& obj, std::initializer_list<const char*> forbidden,
                 const std::string& context) {
  for (const char* key : forbidden)
    if (obj.contains(key))
      throw ConfigError("config error: key \"" + std::string(key) + "\" does not apply to " +
                        context);
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "fig3") return ScenarioKind::fig3;
  if (name == "fig2") return ScenarioKind::fig2;
  if (name == "stirap") return ScenarioKind::stirap;
  if (name == "gate_report") return ScenarioKind::gate_report;
  if (name == "check_dark") return ScenarioKind::check_dark;
  if (name == "sweep") return ScenarioKind::sweep;
  throw ConfigError("config error: unknown scenario \"" + name + "\"");
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "four_level") return ModelKind::four_level;
  if (name == "nine_level") return ModelKind::nine_level;
  if (name == "lab_oracle") return ModelKind::lab_oracle;
  throw ConfigError("config error: unknown model \"" + name + "\"");
}

ModelKind default_model_for(ScenarioKind scenario) {
  return scenario == ScenarioKind::fig2 ? ModelKind::nine_level : ModelKind::four_level;
}

PulseSchedule parse_pulse(const json& pulse) {
  PulseSchedule schedule;
  const std::string kind = pulse["kind"].get<std::string>();
  if (kind == "designed") {
    schedule.kind = EnvelopeKind::designed;
    reject_keys(pulse, {"pump", "stokes", "omega_p_MHz_angular", "omega_s_MHz_angular"},
                "a designed pulse");
    schedule.chi = get_number(pulse, "chi_rad", -0.25 * M_PI);
    schedule.phi = get_number(pulse, "phi_rad", 0.0);
    schedule.omega0 = get_number(pulse, "omega0_MHz_angular", 20.0);
    schedule.alpha = get_number(pulse, "alpha_MHz_angular", 1.0);
    if (schedule.omega0 <= 0.0)
      throw ConfigError(
          "config error: pulse.omega0_MHz_angular must be > 0 for a designed pulse (the "
          "holonomy parametrization is singular at zero two-photon detuning)");
  } else if (kind == "gaussian_stirap") {
    schedule.kind = EnvelopeKind::gaussian_stirap;
    reject_keys(pulse,
                {"chi_rad", "phi_rad", "alpha_MHz_angular", "omega_p_MHz_angular",
                 "omega_s_MHz_angular"},
                "a gaussian_stirap pulse");
    if (!pulse.contains("pump") || !pulse.contains("stokes"))
      throw ConfigError(
          "config error: gaussian_stirap pulse requires \"pump\" and \"stokes\" blocks");
    schedule.omega0 = get_number(pulse, "omega0_MHz_angular", 0.0);
    auto read_gaussian = [](const json& block) {
      GaussianPulse g;
      g.amplitude = block["amplitude_MHz_angular"].get<double>();
      g.center = block["center_us"].get<double>();
      g.width = block["width_us"].get<double>();
      return g;
    };
    schedule.pump = read_gaussian(pulse["pump"]);
    schedule.stokes = read_gaussian(pulse["stokes"]);
  } else if (kind == "constant") {
    schedule.kind = EnvelopeKind::constant_amplitude;
    reject_keys(pulse, {"chi_rad", "phi_rad", "alpha_MHz_angular", "pump", "stokes"},
                "a constant pulse");
    if (!pulse.contains("omega_p_MHz_angular") || !pulse.contains("omega_s_MHz_angular"))
      throw ConfigError(
          "config error: constant pulse requires omega_p_MHz_angular and "
          "omega_s_MHz_angular");
    schedule.omega0 = get_number(pulse, "omega0_MHz_angular", 0.0);
    schedule.omega_p_const = pulse["omega_p_MHz_angular"].get<double>();
    schedule.omega_s_const = pulse["omega_s_MHz_angular"].get<double>();
  } else {
    throw ConfigError("config error: unknown pulse kind \"" + kind + "\"");
  }
  try {
    schedule.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return schedule;
}

std::string default_initial_state(ModelKind model) {
  return model == ModelKind::nine_level ? "ms_minus1" : "ground_1";
}

void fill_output_defaults(ScenarioConfig& config) {
  switch (config.scenario) {
    case ScenarioKind::fig3:
      if (config.csv_name.empty()) config.csv_name = "fig3.csv";
      if (config.report_name.empty()) config.report_name = "fig3_report.json";
      break;
    case ScenarioKind::fig2:
      if (config.csv_name.empty()) config.csv_name = "fig2.csv";
      break;
    case ScenarioKind::stirap:
      if (config.csv_name.empty()) config.csv_name = "stirap.csv";
      if (config.report_name.empty()) config.report_name = "stirap_report.json";
      break;
    case ScenarioKind::gate_report:
      if (config.report_name.empty())
        config.report_name = "gate_report_" + to_string(config.model) + ".json";
      break;
    case ScenarioKind::check_dark:
      if (config.report_name.empty()) config.report_name = "check_dark_report.json";
      break;
    case ScenarioKind::sweep:
      if (config.csv_name.empty())
        config.csv_name = "sweep_" + to_string(config.sweep ? config.sweep->axis
                                                            : SweepAxis::alpha) +
                          ".csv";
      break;
  }
}

SweepSettings parse_sweep(const json& block) {
  SweepSettings sweep;
  const std::string axis = block["axis"].get<std::string>();
  if (axis == "alpha") sweep.axis = SweepAxis::alpha;
  else if (axis == "omega0") sweep.axis = SweepAxis::omega0;
  else if (axis == "steps") sweep.axis = SweepAxis::steps;
  else throw ConfigError("config error: unknown sweep axis \"" + axis + "\"");

  sweep.auto_window = block.contains("auto_window") ? block["auto_window"].get<bool>()
                                                    : (sweep.axis == SweepAxis::alpha);

  const bool has_values_phys = block.contains("values_MHz_angular");
  const bool has_values_int = block.contains("values");
  const bool has_linspace = block.contains("linspace_MHz_angular");

  if (sweep.axis == SweepAxis::steps) {
    if (!has_values_int || has_values_phys || has_linspace)
      throw ConfigError("config error: a steps sweep takes exactly the \"values\" list");
    for (const auto& v : block["values"]) {
      const long long steps = v.get<long long>();
      if (steps < 2) throw ConfigError("config error: sweep steps values must be >= 2");
      sweep.values.push_back(static_cast<double>(steps));
    }
  } else {
    if (has_values_int)
      throw ConfigError(
          "config error: physical sweep axes take \"values_MHz_angular\" (or "
          "\"linspace_MHz_angular\"), not \"values\"");
    if (has_values_phys == has_linspace)
      throw ConfigError(
          "config error: provide exactly one of \"values_MHz_angular\" and "
          "\"linspace_MHz_angular\"");
    if (has_values_phys) {
      for (const auto& v : block["values_MHz_angular"]) sweep.values.push_back(v.get<double>());
    } else {
      const json& lin = block["linspace_MHz_angular"];
      const double from = lin["from"].get<double>();
      const double to = lin["to"].get<double>();
      const long long count = lin["count"].get<long long>();
      for (long long i = 0; i < count; ++i)
        sweep.values.push_back(count == 1 ? from
                                          : from + (to - from) * static_cast<double>(i) /
                                                       static_cast<double>(count - 1));
    }
    for (double v : sweep.values)
      if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("config error: swept " + axis + " values must be > 0");
  }
  if (sweep.values.empty()) throw ConfigError("config error: empty sweep");
  return sweep;
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  {
    const auto violations =
        schema_violations(default_config_text("schema/scenario_config"), json_text);
    if (!violations.empty()) {
      std::string msg = "config error: schema violations:";
      for (const auto& v : violations) msg += "\n  - " + v;
      throw ConfigError(msg);
    }
  }
  const json doc = parse_json_or_throw(json_text, "config parse error");

  ScenarioConfig config;
  config.scenario = parse_scenario_kind(doc["scenario"].get<std::string>());
  config.model = doc.contains("model") ? parse_model_kind(doc["model"].get<std::string>())
                                       : default_model_for(config.scenario);

  // scenario/model compatibility
  switch (config.scenario) {
    case ScenarioKind::fig2:
      if (config.model != ModelKind::nine_level)
        throw ConfigError("config error: the fig2 scenario requires model nine_level");
      break;
    case ScenarioKind::fig3:
    case ScenarioKind::stirap:
    case ScenarioKind::check_dark:
    case ScenarioKind::sweep:
      if (config.model != ModelKind::four_level)
        throw ConfigError("config error: scenario " + to_string(config.scenario) +
                          " requires model four_level");
      break;
    case ScenarioKind::gate_report:
      break;
  }

  config.pulse = parse_pulse(doc["pulse"]);
  if (config.scenario == ScenarioKind::stirap &&
      config.pulse.kind != EnvelopeKind::gaussian_stirap)
    throw ConfigError("config error: the stirap scenario requires pulse kind gaussian_stirap");
  if ((config.scenario == ScenarioKind::sweep ||
       config.scenario == ScenarioKind::gate_report) &&
      config.pulse.kind != EnvelopeKind::designed)
    throw ConfigError("config error: scenario " + to_string(config.scenario) +
                      " requires the designed pulse kind");

  if (doc.contains("detunings")) {
    config.detunings_explicit = true;
    config.delta1 = doc["detunings"]["delta1_MHz_angular"].get<double>();
    config.delta2 = doc["detunings"]["delta2_MHz_angular"].get<double>();
  } else {
    config.delta1 = config.pulse.omega0;
    config.delta2 = config.pulse.omega0;
  }

  // grid: window defaults to the schedule's natural support
  const double half = config.pulse.default_half_window();
  config.grid.t0 = -half;
  config.grid.tf = half;
  config.grid.steps = 24000;
  config.grid.substeps = 1;
  if (doc.contains("grid")) {
    const json& grid = doc["grid"];
    config.grid.t0 = get_number(grid, "t0_us", config.grid.t0);
    config.grid.tf = get_number(grid, "tf_us", config.grid.tf);
    if (grid.contains("steps")) config.grid.steps = grid["steps"].get<int>();
    if (grid.contains("substeps")) config.grid.substeps = grid["substeps"].get<int>();
  }
  try {
    config.grid.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }

  config.initial_state = doc.contains("initial_state")
                             ? doc["initial_state"].get<std::string>()
                             : default_initial_state(config.model);

  if (doc.contains("output")) {
    const json& output = doc["output"];
    if (output.contains("csv")) config.csv_name = output["csv"].get<std::string>();
    if (output.contains("report")) config.report_name = output["report"].get<std::string>();
  }

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    ToleranceSet& ts = config.tolerances;
    ts.hermiticity = get_number(t, "hermiticity", ts.hermiticity);
    ts.unitarity = get_number(t, "unitarity", ts.unitarity);
    ts.norm_drift = get_number(t, "norm_drift", ts.norm_drift);
    ts.stability_threshold = get_number(t, "stability_threshold", ts.stability_threshold);
    ts.path_closure = get_number(t, "path_closure", ts.path_closure);
    ts.endpoint_cap = get_number(t, "endpoint_cap", ts.endpoint_cap);
    ts.step_defect_limit = get_number(t, "step_defect_limit", ts.step_defect_limit);
    ts.offdiag_flag = get_number(t, "offdiag_flag", ts.offdiag_flag);
    ts.kernel_residual = get_number(t, "kernel_residual", ts.kernel_residual);
  }

  if (doc.contains("nine_level")) {
    const json& nine = doc["nine_level"];
    NineLevelParams params;
    params.d_gs = nine["d_gs_MHz_angular"].get<double>();
    const json& excited = nine["excited_MHz_angular"];
    params.excited_energies = {excited["A2"].get<double>(), excited["A1"].get<double>(),
                               excited["Ex"].get<double>(), excited["Ey"].get<double>(),
                               excited["Epx"].get<double>(), excited["Epy"].get<double>()};
    params.dipole = default_dipole_table();
    config.nine = params;
  } else if (config.model == ModelKind::nine_level) {
    throw ConfigError(
        "config error: model nine_level requires the \"nine_level\" fine-structure block "
        "(keys d_gs_MHz_angular, excited_MHz_angular.{A2,A1,Ex,Ey,Epx,Epy})");
  }

  if (doc.contains("lab")) {
    config.lab_omega3 = doc["lab"]["omega3_MHz_angular"].get<double>();
    config.lab_omega4 = doc["lab"]["omega4_MHz_angular"].get<double>();
  }

  if (doc.contains("check")) {
    const json& check = doc["check"];
    if (check.contains("samples")) config.check.samples = check["samples"].get<int>();
    if (check.contains("seed"))
      config.check.seed = check["seed"].get<unsigned long long>();
    config.check.window_t0 = get_number(check, "window_t0_us", config.check.window_t0);
    config.check.window_tf = get_number(check, "window_tf_us", config.check.window_tf);
    if (!(config.check.window_tf > config.check.window_t0))
      throw ConfigError("config error: check window requires window_tf_us > window_t0_us");
  } else if (config.scenario == ScenarioKind::check_dark) {
    config.check.window_t0 = config.grid.t0;
    config.check.window_tf = config.grid.tf;
  }

  if (doc.contains("sweep")) {
    config.sweep = parse_sweep(doc["sweep"]);
  } else if (config.scenario == ScenarioKind::sweep) {
    throw ConfigError("config error: the sweep scenario requires a \"sweep\" block");
  }

  // validate the initial-state label against the model's basis
  initial_state_index(config);

  fill_output_defaults(config);
  return config;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config error: cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_config(buffer.str());
}

// ---------------------------------------------------------------------------
// derived parameter helpers
// ---------------------------------------------------------------------------

FourLevelParams four_level_params_from(const ScenarioConfig& config) {
  FourLevelParams params;
  params.delta1 = config.delta1;
  params.delta2 = config.delta2;
  params.schedule = config.pulse;
  return params;
}

NineLevelParams nine_level_params_from(const ScenarioConfig& config) {
  if (!config.nine)
    throw ConfigError("config error: nine-level parameters requested without the "
                      "\"nine_level\" block");
  NineLevelParams params = *config.nine;
  params.delta1 = config.delta1;
  params.delta2 = config.delta2;
  params.schedule = config.pulse;
  return params;
}

int initial_state_index(const ScenarioConfig& config) {
  const std::string& label = config.initial_state;
  if (config.model == ModelKind::nine_level) {
    for (int i = 0; i < kNineDim; ++i)
      if (label == kNineStateNames[i]) return i;
    throw ConfigError("config error: unknown nine-level initial state \"" + label +
                      "\" (expected one of the m_s / excited-state labels)");
  }
  if (label == "ground_1") return 0;
  if (label == "ground_2") return 1;
  if (label == "excited_3") return 2;
  if (label == "excited_4") return 3;
  throw ConfigError("config error: unknown four-level initial state \"" + label +
                    "\" (expected ground_1, ground_2, excited_3 or excited_4)");
}

PropagationOptions propagation_options_from(const ToleranceSet& tolerances) {
  PropagationOptions options;
  options.norm_drift_tolerance = tolerances.norm_drift;
  options.unitarity_tolerance = tolerances.unitarity;
  options.stability_threshold = tolerances.stability_threshold;
  options.hermiticity_tolerance = tolerances.hermiticity;
  return options;
}

}  // namespace nvholo
