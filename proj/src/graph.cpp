#include "sirgraph/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace sirgraph {

namespace {

std::string fmt_pair(const VertexId& v, const EdgeId& e) {
  return "vertex '" + v + "', edge '" + e + "'";
}

}  // namespace

MetricGraph MetricGraph::build(std::vector<VertexId> vertex_ids,
                               std::vector<EdgeSpec> edge_specs) {
  MetricGraph g;
  g.vertices_ = std::move(vertex_ids);
  g.edges_ = std::move(edge_specs);

  if (g.vertices_.empty()) throw config_error("graph has no vertices");

  std::unordered_map<std::string, std::size_t> vidx;
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
    if (!vidx.emplace(g.vertices_[i], i).second)
      throw config_error("duplicate vertex id '" + g.vertices_[i] + "'");
  }
  std::unordered_map<std::string, std::size_t> eidx;
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    if (!eidx.emplace(g.edges_[i].id, i).second)
      throw config_error("duplicate edge id '" + g.edges_[i].id + "'");
  }

  g.incidences_.resize(g.vertices_.size());
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const EdgeSpec& e = g.edges_[i];
    auto from = vidx.find(e.from);
    auto to = vidx.find(e.to);
    if (from == vidx.end())
      throw config_error("UnknownVertex: edge '" + e.id +
                         "' references undeclared vertex '" + e.from + "'");
    if (to == vidx.end())
      throw config_error("UnknownVertex: edge '" + e.id +
                         "' references undeclared vertex '" + e.to + "'");
    if (from->second == to->second)
      throw config_error("SelfLoop: edge '" + e.id + "' joins vertex '" +
                         e.from + "' to itself");
    if (!(e.length > 0.0))
      throw config_error("NonPositiveLength: edge '" + e.id + "'");
    if (e.diffusivity < 0.0)
      throw config_error("NegativeDiffusivity: edge '" + e.id + "'");
    g.incidences_[from->second].push_back({i, true});
    g.incidences_[to->second].push_back({i, false});
  }

  // Connectivity (single isolated vertex degenerates to classical SIR).
  if (g.vertices_.size() > 1) {
    std::vector<char> seen(g.vertices_.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      for (const Incidence& inc : g.incidences_[v]) {
        const EdgeSpec& e = g.edges_[inc.edge];
        std::size_t w = vidx.at(inc.at_origin ? e.to : e.from);
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
      }
    }
    if (reached != g.vertices_.size())
      throw config_error("DisconnectedGraph: graph is not connected");
  }
  return g;
}

std::size_t MetricGraph::vertex_index(const VertexId& id) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end())
    throw config_error("UnknownVertex: '" + id + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t MetricGraph::edge_index(const EdgeId& id) const {
  auto it = std::find_if(edges_.begin(), edges_.end(),
                         [&](const EdgeSpec& e) { return e.id == id; });
  if (it == edges_.end()) throw config_error("UnknownEdge: '" + id + "'");
  return static_cast<std::size_t>(it - edges_.begin());
}

CouplingMatrices coupling_matrices(const MetricGraph& graph, std::size_t v,
                                   const VertexCoupling& coupling) {
  const auto& inc = graph.incidences(v);
  const Eigen::Index n = static_cast<Eigen::Index>(inc.size());
  if (coupling.alpha.size() != n || coupling.lambda.size() != n ||
      coupling.nu.rows() != n || coupling.nu.cols() != n)
    throw config_error("coupling at vertex '" + graph.vertices()[v] +
                       "' is not sized to the vertex degree");

  CouplingMatrices m;
  m.A = coupling.alpha.asDiagonal();
  m.N = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      m.N(i, i) += coupling.nu(i, j);   // outgoing from edge e_i
      m.N(i, j) -= coupling.nu(j, i);   // incoming from edge e_j
    }
  }
  m.K = m.A + m.N;
  m.Lambda = coupling.lambda;
  m.D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    m.D(k, k) = graph.edges()[inc[static_cast<std::size_t>(k)].edge].diffusivity;
  m.lambda_bar = coupling.lambda.sum();
  return m;
}

ValidationReport validate_hypotheses(const MetricGraph& graph,
                                     const std::vector<VertexCoupling>& couplings,
                                     ValidationMode mode) {
  if (couplings.size() != graph.vertex_count())
    throw config_error("couplings must be supplied for every vertex");

  ValidationReport report;
  const bool strict = (mode == ValidationMode::Strict);

  auto add = [&](std::size_t v, std::string detail, bool warning = false) {
    report.entries.push_back({graph.vertices()[v], std::move(detail), warning});
  };

  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const auto& inc = graph.incidences(v);
    const auto& c = couplings[v];
    const Eigen::Index n = static_cast<Eigen::Index>(inc.size());
    if (c.alpha.size() != n || c.lambda.size() != n || c.nu.rows() != n ||
        c.nu.cols() != n) {
      add(v, "coupling not sized to degree " + std::to_string(inc.size()));
      continue;
    }
    auto edge_id = [&](Eigen::Index k) {
      return graph.edges()[inc[static_cast<std::size_t>(k)].edge].id;
    };
    const double lo = strict ? 0.0 : -1e-300;  // strict: open at 0
    for (Eigen::Index k = 0; k < n; ++k) {
      double a = c.alpha(k), l = c.lambda(k);
      if (!(a > lo) || !(a < 1.0))
        add(v, "alpha out of range on " + fmt_pair(graph.vertices()[v], edge_id(k)) +
                   ": " + std::to_string(a));
      if (!(l > lo) || !(l < 1.0))
        add(v, "lambda out of range on " + fmt_pair(graph.vertices()[v], edge_id(k)) +
                   ": " + std::to_string(l));
      if (c.nu(k, k) != 0.0)
        add(v, "nu has nonzero diagonal on edge '" + edge_id(k) + "'");
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == k) continue;
        double nu = c.nu(k, j);
        if (!(nu >= 0.0) || !(nu < 1.0))
          add(v, "nu out of [0,1) from '" + edge_id(k) + "' to '" + edge_id(j) +
                     "': " + std::to_string(nu));
      }
    }
    double sum_a = c.alpha.sum(), sum_l = c.lambda.sum();
    if (!(sum_a > lo) || !(sum_a < 1.0))
      add(v, "sum of alpha out of range: " + std::to_string(sum_a));
    if (!(sum_l > lo) || !(sum_l < 1.0))
      add(v, "sum of lambda out of range: " + std::to_string(sum_l));

    // Column diagonal dominance of K_v: for each edge e_k,
    //   sum_{l != k} nu(l,k) < alpha_k + sum_{j != k} nu(k,j),
    // and the diagonal entry of K_v must lie in (0,1).
    // Symmetric nu satisfies the first inequality automatically.
    for (Eigen::Index k = 0; k < n; ++k) {
      double nu_out = 0.0, nu_in = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == k) continue;
        nu_out += c.nu(k, j);
        nu_in += c.nu(j, k);
      }
      if (!(nu_in < c.alpha(k) + nu_out))
        add(v,
            "column dominance violated on edge '" + edge_id(k) + "': incoming " +
                std::to_string(nu_in) + " >= " + std::to_string(c.alpha(k) + nu_out),
            /*warning=*/!strict);
      double kdiag = c.alpha(k) + nu_out;
      if (!(kdiag > 0.0) || !(kdiag < 1.0))
        add(v, "K diagonal out of (0,1) on edge '" + edge_id(k) + "': " +
                   std::to_string(kdiag),
            /*warning=*/!strict);
    }
  }
  return report;
}

}  // namespace sirgraph
