#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "sirgraph/errors.hpp"

namespace sirgraph {

using VertexId = std::string;
using EdgeId = std::string;

struct EdgeSpec {
  EdgeId id;
  VertexId from;  // endpoint at x = 0
  VertexId to;    // endpoint at x = length
  double length = 1.0;
  double diffusivity = 1.0;
};

// One (vertex, incident edge) pair. `at_origin` records which endpoint of
// the edge sits at this vertex; the outward normal is -d/dx at x=0 and
// +d/dx at x=length.
struct Incidence {
  std::size_t edge = 0;  // index into MetricGraph::edges
  bool at_origin = true;
};

// A compact metric graph: finite, connected, every edge a segment
// [0, length] with its own diffusivity. Parallel edges are allowed,
// self-loops are rejected. Immutable after construction.
class MetricGraph {
 public:
  MetricGraph() = default;  // empty placeholder; build() makes real graphs
  static MetricGraph build(std::vector<VertexId> vertex_ids,
                           std::vector<EdgeSpec> edge_specs);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeSpec>& edges() const { return edges_; }

  std::size_t vertex_index(const VertexId& id) const;
  std::size_t edge_index(const EdgeId& id) const;

  // Incident edges of vertex v, in edge-declaration order.
  const std::vector<Incidence>& incidences(std::size_t v) const {
    return incidences_[v];
  }
  std::size_t degree(std::size_t v) const { return incidences_[v].size(); }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeSpec> edges_;
  std::vector<std::vector<Incidence>> incidences_;
};

// Per-vertex exchange coefficients, sized by the vertex degree and ordered
// like MetricGraph::incidences(v):
//   alpha[k]  absorption from edge e_k into the vertex,
//   lambda[k] emission from the vertex onto edge e_k,
//   nu(k,l)   transfer rate from edge e_k to edge e_l (zero diagonal).
struct VertexCoupling {
  Eigen::VectorXd alpha;
  Eigen::VectorXd lambda;
  Eigen::MatrixXd nu;
};

// Derived matrices entering the Robin vertex condition
// D_v du/dn + K_v u = Lambda_v I_v, with K_v = A_v + N_v.
struct CouplingMatrices {
  Eigen::MatrixXd A;       // diag(alpha)
  Eigen::MatrixXd N;       // column sums exactly zero
  Eigen::MatrixXd K;       // A + N
  Eigen::VectorXd Lambda;  // lambda
  Eigen::MatrixXd D;       // diag(d_e)
  double lambda_bar = 0.0;
};

CouplingMatrices coupling_matrices(const MetricGraph& graph, std::size_t v,
                                   const VertexCoupling& coupling);

enum class ValidationMode {
  Strict,   // open intervals as stated
  Relaxed,  // alpha/lambda/nu entries may be 0; dominance downgraded to warning
};

struct ValidationEntry {
  VertexId vertex;
  std::string detail;
  bool warning = false;  // warnings do not fail validation
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (!e.warning) return false;
    return true;
  }
};

// Checks the standing hypotheses on (alpha, lambda, nu) at every vertex:
// entries in range, coefficient sums in range, and column diagonal
// dominance of K_v. Symmetric nu always satisfies the dominance condition.
ValidationReport validate_hypotheses(const MetricGraph& graph,
                                     const std::vector<VertexCoupling>& couplings,
                                     ValidationMode mode = ValidationMode::Strict);

}  // namespace sirgraph
