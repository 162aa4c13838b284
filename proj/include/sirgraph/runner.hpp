#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "sirgraph/config.hpp"
#include "sirgraph/solver.hpp"

namespace sirgraph {

inline constexpr int kSummarySchemaVersion = 1;

// Hypothesis report as machine-readable JSON; throws nothing. `ok` is false
// only for hard violations (warnings are listed separately).
nlohmann::json validation_json(const PresetScenario& scenario);

struct RunArtifacts {
  nlohmann::json summary;
  Trajectory trajectory;
};

// Simulates the configured scenario and writes any requested outputs
// (trajectory CSV, summary JSON, field snapshots).
RunArtifacts run_simulation(const SimulationConfig& config);

// Asymptotics only (no PDE integration): stability bound, reproduction
// numbers, symmetric closed form when applicable, two-vertex boxes.
nlohmann::json analyze(const SimulationConfig& config);

struct SweepRow {
  std::size_t index = 0;
  double value = 0.0;
  nlohmann::json summary;  // null on failure
  std::string error;
  ErrorKind error_kind = ErrorKind::Config;
};

// Runs one simulation per sweep value (concurrently, order-stable) and
// writes the summary table when configured. On per-run failure the table
// still covers the remaining values; the first failure is then rethrown
// with its axis value. Worker count: SIRGRAPH_WORKERS (default: hardware).
std::vector<SweepRow> run_sweep(const SimulationConfig& config);

void write_trajectory_csv(const std::string& path, const MetricGraph& graph,
                          const Trajectory& trajectory);
std::string sweep_table_csv(const std::vector<SweepRow>& rows);

}  // namespace sirgraph
