#pragma once

#include <cstddef>
#include <vector>

#include "sirgraph/graph.hpp"

namespace sirgraph {

// Finite-difference grid over all edges. Each edge e carries J_e >= 3
// samples at x_i = (i-1) dx_e with length = (J_e - 1) dx_e exactly;
// dx_e is derived from the requested resolution by rounding J_e.
//
// Edge samples at a shared vertex are distinct unknowns: the field is a
// direct sum over edges and is not continuous across vertices. sigma(v,k)
// is the global index of the vertex sample of the k-th incident edge of v,
// neighbor(v,k) its nearest interior neighbor (sigma +/- 1).
class Grid {
 public:
  static Grid build(const MetricGraph& graph,
                    const std::vector<double>& requested_dx);
  static Grid build(const MetricGraph& graph, double requested_dx);

  std::size_t total_points() const { return total_; }
  std::size_t edge_points(std::size_t e) const { return points_[e]; }
  double edge_dx(std::size_t e) const { return dx_[e]; }
  std::size_t edge_offset(std::size_t e) const { return offset_[e]; }

  std::size_t sigma(std::size_t v, std::size_t k) const {
    return sigma_[v][k];
  }
  std::size_t neighbor(std::size_t v, std::size_t k) const {
    return neighbor_[v][k];
  }

  // Trapezoidal quadrature of an edge-field vector sized total_points():
  //   sum_e dx_e * (interior samples) + 1/2 sum_v sum_k dx_{e_k} * U_sigma.
  double trapezoid(const Eigen::VectorXd& u) const;

 private:
  std::size_t total_ = 0;
  std::vector<std::size_t> points_;
  std::vector<double> dx_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::size_t>> sigma_;
  std::vector<std::vector<std::size_t>> neighbor_;
};

}  // namespace sirgraph
