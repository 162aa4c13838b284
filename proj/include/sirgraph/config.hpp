#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sirgraph/presets.hpp"
#include "sirgraph/solver.hpp"

namespace sirgraph {

struct SchemeConfig {
  double dt = 0.01;
  double dx = 0.01;
  double t_end = 100.0;
  std::size_t record_every = 1;
  bool steady_stop = false;
  double steady_tol = 1e-10;
  bool allow_unstable_dt = false;
  bool record_fields = false;
};

struct OutputConfig {
  std::string trajectory_csv;
  std::string summary_json;
  std::string fields_csv;
  std::string table_csv;  // sweep table
};

struct SweepConfig {
  std::string parameter;        // JSON pointer into the normalized config
  std::vector<double> values;
};

struct SimulationConfig {
  nlohmann::json normalized;  // canonical form; sweep pointers apply here
  SchemeConfig scheme;
  OutputConfig output;
  std::optional<SweepConfig> sweep;
};

// Parses and validates; reports every failure at once in the error message.
SimulationConfig parse_config_json(const nlohmann::json& doc);
SimulationConfig parse_config(const std::string& path);

// Builds the scenario a config describes (preset or explicit graph).
PresetScenario materialize(const SimulationConfig& config);

}  // namespace sirgraph
