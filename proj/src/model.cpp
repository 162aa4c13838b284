#include "sirgraph/model.hpp"

#include <cmath>

namespace sirgraph {

void EpidemicParams::validate(std::size_t n_vertices) const {
  auto n = static_cast<Eigen::Index>(n_vertices);
  if (tau.size() != n || eta.size() != n)
    throw config_error("params must provide tau and eta for every vertex");
  for (Eigen::Index v = 0; v < n; ++v) {
    if (!(tau(v) > 0.0))
      throw config_error("tau must be strictly positive at every vertex");
    if (!(eta(v) > 0.0))
      throw config_error("eta must be strictly positive at every vertex");
  }
  if (!tau_schedule.empty() && tau_schedule.size() != n_vertices)
    throw config_error("tau schedule must cover every vertex");
  if (!exchange_schedule.empty() && exchange_schedule.size() != n_vertices)
    throw config_error("exchange schedule must cover every vertex");
}

void InitialData::validate(const MetricGraph& graph) const {
  auto n = static_cast<Eigen::Index>(graph.vertex_count());
  if (S0.size() != n || I0.size() != n)
    throw config_error("initial data must cover every vertex");
  for (Eigen::Index v = 0; v < n; ++v) {
    if (!(S0(v) > 0.0))
      throw config_error("S0 must be strictly positive at every vertex");
    if (I0(v) < 0.0) throw config_error("I0 must be nonnegative");
  }
  // A zero total seed (I0 = 0, u0 = 0) is admitted: the scheme keeps such
  // states at equilibrium exactly.
  if (edge_profiles.size() != graph.edge_count())
    throw config_error("an edge profile must be given for every edge");
}

Eigen::VectorXd sample_edge_field(const MetricGraph& graph, const Grid& grid,
                                  const InitialData& initial) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(grid.total_points()));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const EdgeProfile& p = initial.edge_profiles[e];
    std::size_t j0 = grid.edge_offset(e);
    std::size_t je = grid.edge_points(e);
    switch (p.kind) {
      case EdgeProfile::Kind::Zero:
        break;
      case EdgeProfile::Kind::BoundaryLayer: {
        double d = graph.edges()[e].diffusivity;
        double len = graph.edges()[e].length;
        double amp = p.bl_lambda1 * p.bl_i0 / p.bl_alpha1;
        for (std::size_t i = 0; i < je; ++i) {
          double x = grid.edge_dx(e) * static_cast<double>(i);
          u(static_cast<Eigen::Index>(j0 + i)) =
              amp * std::exp(-p.bl_alpha2 * x * x / (2.0 * d * len));
        }
        break;
      }
      case EdgeProfile::Kind::Samples: {
        if (p.samples.size() != je)
          throw config_error("edge '" + graph.edges()[e].id + "' sample count " +
                             std::to_string(p.samples.size()) +
                             " does not match grid size " + std::to_string(je));
        for (std::size_t i = 0; i < je; ++i)
          u(static_cast<Eigen::Index>(j0 + i)) = p.samples[i];
        break;
      }
    }
  }
  if ((u.array() < 0.0).any())
    throw config_error("initial edge field must be nonnegative");
  return u;
}

double initial_mass(const MetricGraph& graph, const Grid& grid,
                    const InitialData& initial) {
  Eigen::VectorXd u = sample_edge_field(graph, grid, initial);
  double m0 = grid.trapezoid(u) + initial.S0.sum() + initial.I0.sum();
  if (!(m0 > 0.0)) throw config_error("NonPositiveMass: M0 must be positive");
  return m0;
}

Eigen::VectorXd check_bc_compatibility(const MetricGraph& graph,
                                       const std::vector<VertexCoupling>& couplings,
                                       const Grid& grid,
                                       const InitialData& initial) {
  Eigen::VectorXd u = sample_edge_field(graph, grid, initial);
  Eigen::VectorXd res(static_cast<Eigen::Index>(graph.vertex_count()));
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    CouplingMatrices m = coupling_matrices(graph, v, couplings[v]);
    auto deg = static_cast<Eigen::Index>(graph.degree(v));
    Eigen::VectorXd uv(deg), dn(deg);
    for (Eigen::Index k = 0; k < deg; ++k) {
      auto ks = static_cast<std::size_t>(k);
      double us = u(static_cast<Eigen::Index>(grid.sigma(v, ks)));
      double un = u(static_cast<Eigen::Index>(grid.neighbor(v, ks)));
      double dx = grid.edge_dx(graph.incidences(v)[ks].edge);
      uv(k) = us;
      // Outward normal points away from the edge interior.
      dn(k) = (us - un) / dx;
    }
    Eigen::VectorXd r = m.D * dn + m.K * uv -
                        m.Lambda * initial.I0(static_cast<Eigen::Index>(v));
    res(static_cast<Eigen::Index>(v)) = r.cwiseAbs().maxCoeff();
  }
  return res;
}

ReproductionNumbers reproduction_numbers(const EpidemicParams& params,
                                         const InitialData& initial, double m0) {
  ReproductionNumbers r;
  r.basic = m0 * params.tau.array() / params.eta.array();
  r.effective = initial.S0.array() * params.tau.array() / params.eta.array();
  return r;
}

}  // namespace sirgraph
