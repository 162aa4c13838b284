#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "sirgraph/graph.hpp"
#include "sirgraph/grid.hpp"
#include "sirgraph/schedule.hpp"

namespace sirgraph {

// Per-vertex epidemic rates. tau may vary in time (lockdown scenarios);
// when tau_schedule is empty tau is constant.
struct EpidemicParams {
  Eigen::VectorXd tau;  // contact rate, > 0
  Eigen::VectorXd eta;  // removal rate, > 0
  std::vector<Schedule> tau_schedule;        // optional, per vertex
  std::vector<Schedule> exchange_schedule;   // optional multiplicative factor
                                             // on alpha/lambda/nu, per vertex

  double tau_at(std::size_t v, double t) const {
    if (tau_schedule.empty()) return tau(static_cast<Eigen::Index>(v));
    return tau_schedule[v].at(t);
  }
  double exchange_factor_at(std::size_t v, double t) const {
    if (exchange_schedule.empty()) return 1.0;
    return exchange_schedule[v].at(t);
  }
  bool time_varying_exchange() const {
    for (const auto& s : exchange_schedule)
      if (s.kind != Schedule::Kind::Constant) return true;
    return false;
  }

  void validate(std::size_t n_vertices) const;
};

// Edge initial profile: either a closed-form preset evaluated on the grid
// or a raw sample vector matching the edge point count.
struct EdgeProfile {
  enum class Kind { Zero, BoundaryLayer, Samples };
  Kind kind = Kind::Zero;
  // BoundaryLayer: u0(x) = (lambda1 I0 / alpha1) exp(-alpha2 x^2 / (2 d l)),
  // anchored at the x=0 vertex of the edge.
  double bl_lambda1 = 0.0, bl_alpha1 = 1.0, bl_alpha2 = 0.0, bl_i0 = 0.0;
  std::vector<double> samples;
};

struct InitialData {
  Eigen::VectorXd S0;  // > 0 per vertex
  Eigen::VectorXd I0;  // >= 0 per vertex, sum > 0
  std::vector<EdgeProfile> edge_profiles;  // one per edge

  void validate(const MetricGraph& graph) const;
};

// Samples every edge profile on the grid into one global field vector.
Eigen::VectorXd sample_edge_field(const MetricGraph& graph, const Grid& grid,
                                  const InitialData& initial);

// Total initial mass M0 = trap(U0) + sum_v (S0 + I0), with the same
// trapezoidal rule the stepping uses, so the discrete ledger is exact.
double initial_mass(const MetricGraph& graph, const Grid& grid,
                    const InitialData& initial);

// Residual max-norm per vertex of D_v du0/dn + K_v u0 - Lambda_v I0.
// Nonzero residuals are legitimate (deliberate boundary layers), so this
// reports rather than fails.
Eigen::VectorXd check_bc_compatibility(const MetricGraph& graph,
                                       const std::vector<VertexCoupling>& couplings,
                                       const Grid& grid,
                                       const InitialData& initial);

struct ReproductionNumbers {
  Eigen::VectorXd basic;      // R0_v = M0 tau_v / eta_v
  Eigen::VectorXd effective;  // Re_v = S0_v tau_v / eta_v
};

ReproductionNumbers reproduction_numbers(const EpidemicParams& params,
                                         const InitialData& initial, double m0);

}  // namespace sirgraph
