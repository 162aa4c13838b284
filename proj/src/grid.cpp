#include "sirgraph/grid.hpp"

#include <cmath>

namespace sirgraph {

Grid Grid::build(const MetricGraph& graph,
                 const std::vector<double>& requested_dx) {
  if (requested_dx.size() != graph.edge_count())
    throw config_error("requested dx must be given per edge");

  Grid g;
  g.points_.resize(graph.edge_count());
  g.dx_.resize(graph.edge_count());
  g.offset_.resize(graph.edge_count());
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    double len = graph.edges()[e].length;
    double dx = requested_dx[e];
    if (!(dx > 0.0) || dx > len / 2.0)
      throw config_error("requested dx for edge '" + graph.edges()[e].id +
                         "' must lie in (0, length/2]");
    auto j = static_cast<std::size_t>(std::llround(len / dx)) + 1;
    if (j < 3)
      throw config_error("ResolutionTooCoarse: edge '" + graph.edges()[e].id +
                         "' has fewer than 3 grid points");
    g.points_[e] = j;
    g.dx_[e] = len / static_cast<double>(j - 1);
    g.offset_[e] = g.total_;
    g.total_ += j;
  }

  g.sigma_.resize(graph.vertex_count());
  g.neighbor_.resize(graph.vertex_count());
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (const Incidence& inc : graph.incidences(v)) {
      std::size_t j0 = g.offset_[inc.edge];
      std::size_t je = g.points_[inc.edge];
      if (inc.at_origin) {
        g.sigma_[v].push_back(j0);
        g.neighbor_[v].push_back(j0 + 1);
      } else {
        g.sigma_[v].push_back(j0 + je - 1);
        g.neighbor_[v].push_back(j0 + je - 2);
      }
    }
  }
  return g;
}

Grid Grid::build(const MetricGraph& graph, double requested_dx) {
  return build(graph,
               std::vector<double>(graph.edge_count(), requested_dx));
}

double Grid::trapezoid(const Eigen::VectorXd& u) const {
  double acc = 0.0;
  for (std::size_t e = 0; e < points_.size(); ++e) {
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < points_[e]; ++i)
      sum += u(static_cast<Eigen::Index>(offset_[e] + i));
    acc += dx_[e] * sum;
    acc += 0.5 * dx_[e] *
           (u(static_cast<Eigen::Index>(offset_[e])) +
            u(static_cast<Eigen::Index>(offset_[e] + points_[e] - 1)));
  }
  return acc;
}

}  // namespace sirgraph
