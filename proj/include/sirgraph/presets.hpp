#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "sirgraph/graph.hpp"
#include "sirgraph/model.hpp"

namespace sirgraph {

struct PresetScenario {
  MetricGraph graph;
  std::vector<VertexCoupling> couplings;
  EpidemicParams params;
  InitialData initial;
  ValidationMode validation = ValidationMode::Strict;
};

// Prebuilt scenarios with caption defaults:
//   two_vertex        segment, boundary-layer initial profile
//   triangle          fully symmetric 3-cycle
//   triangle_directed cyclic alpha/lambda/nu with mixed diffusivities
//   star4             hub-and-spokes with lockdown schedules
//   lattice(N)        path of N edges (also accepts name "lattice" with
//                     an "N" override)
// Overrides are a flat JSON object; unknown keys are rejected.
PresetScenario build_preset(const std::string& name,
                            const nlohmann::json& overrides);
PresetScenario build_preset(const std::string& name);

}  // namespace sirgraph
