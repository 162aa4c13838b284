#include "sirgraph/presets.hpp"

#include <cmath>
#include <set>
#include <string>

#include "sirgraph/errors.hpp"

namespace sirgraph {

namespace {

using nlohmann::json;

void check_keys(const json& o, std::set<std::string> allowed) {
  if (o.is_null()) return;
  if (!o.is_object()) throw config_error("overrides must be an object");
  for (auto it = o.begin(); it != o.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error("UnknownPreset override key: " + it.key());
}

double num(const json& o, const char* key, double fallback) {
  if (o.is_object() && o.contains(key)) return o.at(key).get<double>();
  return fallback;
}

// Scalar view of a possibly-array override: arrays contribute their first
// entry (the seeded vertex), which anchors derived quantities like the
// boundary-layer amplitude.
double num_or_first(const json& o, const char* key, double fallback) {
  if (!o.is_object() || !o.contains(key)) return fallback;
  const json& v = o.at(key);
  return v.is_array() ? v.at(0).get<double>() : v.get<double>();
}

// Scalars broadcast; arrays must match the vertex count.
Eigen::VectorXd vec(const json& o, const char* key, Eigen::VectorXd fallback) {
  if (!o.is_object() || !o.contains(key)) return fallback;
  const json& v = o.at(key);
  if (v.is_number())
    return Eigen::VectorXd::Constant(fallback.size(), v.get<double>());
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != fallback.size())
    throw config_error(std::string("override '") + key +
                       "' must be a number or an array of length " +
                       std::to_string(fallback.size()));
  Eigen::VectorXd out(fallback.size());
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] = v.at(static_cast<std::size_t>(i)).get<double>();
  return out;
}

VertexCoupling uniform_coupling(std::size_t degree, double alpha,
                                double lambda, double nu) {
  auto deg = static_cast<Eigen::Index>(degree);
  VertexCoupling c;
  c.alpha = Eigen::VectorXd::Constant(deg, alpha);
  c.lambda = Eigen::VectorXd::Constant(deg, lambda);
  c.nu = Eigen::MatrixXd::Constant(deg, deg, nu);
  c.nu.diagonal().setZero();
  return c;
}

PresetScenario two_vertex(const json& o) {
  check_keys(o, {"d", "length", "alpha", "lambda1", "lambda2", "tau", "eta",
                 "S0", "I0", "u0"});
  const double d = num(o, "d", 1.0);
  const double ell = num(o, "length", 1.0);
  const double alpha = num(o, "alpha", 0.25);
  const double lambda1 = num(o, "lambda1", 0.05);
  const double lambda2 = num(o, "lambda2", 0.1);
  const double s0 = num_or_first(o, "S0", 0.5);
  const double i0 = num_or_first(o, "I0", 1e-6);

  PresetScenario sc;
  sc.graph = MetricGraph::build({"v1", "v2"}, {{"e", "v1", "v2", ell, d}});
  sc.couplings = {uniform_coupling(1, alpha, lambda1, 0.0),
                  uniform_coupling(1, alpha, lambda2, 0.0)};
  sc.params.tau = vec(o, "tau", Eigen::VectorXd::Constant(2, 1.0));
  sc.params.eta = vec(o, "eta", Eigen::VectorXd::Constant(2, 1.0 / 3.0));

  std::string u0 = "boundary_layer";
  if (o.is_object() && o.contains("u0")) u0 = o.at("u0").get<std::string>();
  EdgeProfile profile;
  double edge_mass = 0.0;
  if (u0 == "boundary_layer") {
    profile.kind = EdgeProfile::Kind::BoundaryLayer;
    profile.bl_lambda1 = lambda1;
    profile.bl_alpha1 = alpha;
    profile.bl_alpha2 = alpha;
    profile.bl_i0 = i0;
    // int_0^l A exp(-a2 x^2 / (2 d l)) dx with A = lambda1 i0 / alpha1.
    const double s = std::sqrt(2.0 * d * ell / alpha);
    edge_mass = (lambda1 * i0 / alpha) * s * 0.5 * std::sqrt(M_PI) *
                std::erf(ell / s);
  } else if (u0 != "zero") {
    throw config_error("two_vertex u0 must be 'zero' or 'boundary_layer'");
  }
  sc.initial.edge_profiles = {profile};
  // Scalar S0/I0 follow the caption split (S0-I0-edge mass, 1-S0) and
  // (I0, 0); arrays override both vertices directly.
  if (o.is_object() && o.contains("S0") && o.at("S0").is_array())
    sc.initial.S0 = vec(o, "S0", Eigen::VectorXd::Zero(2));
  else
    sc.initial.S0 = (Eigen::VectorXd(2) << s0 - i0 - edge_mass, 1.0 - s0)
                        .finished();
  if (o.is_object() && o.contains("I0") && o.at("I0").is_array())
    sc.initial.I0 = vec(o, "I0", Eigen::VectorXd::Zero(2));
  else
    sc.initial.I0 = (Eigen::VectorXd(2) << i0, 0.0).finished();
  return sc;
}

PresetScenario triangle(const json& o) {
  check_keys(o, {"d", "length", "alpha", "lambda", "nu", "tau", "eta", "S0",
                 "I0"});
  const double d = num(o, "d", 1.0);
  const double ell = num(o, "length", 1.0);
  const double alpha = num(o, "alpha", 1.0 / 8.0);
  const double lambda = num(o, "lambda", 1.0 / 10.0);
  const double nu = num(o, "nu", 0.0);
  const double s0 = num(o, "S0", 1.0);
  const double i0 = num(o, "I0", 1e-6);

  PresetScenario sc;
  sc.graph = MetricGraph::build({"v1", "v2", "v3"},
                                {{"A", "v1", "v2", ell, d},
                                 {"B", "v2", "v3", ell, d},
                                 {"C", "v1", "v3", ell, d}});
  for (int v = 0; v < 3; ++v)
    sc.couplings.push_back(uniform_coupling(2, alpha, lambda, nu));
  sc.params.tau = vec(o, "tau", Eigen::VectorXd::Constant(3, 1.0));
  sc.params.eta = vec(o, "eta", Eigen::VectorXd::Constant(3, 1.0 / 6.0));
  sc.initial.S0 =
      (Eigen::VectorXd(3) << s0 - i0, s0, s0).finished();
  sc.initial.I0 = (Eigen::VectorXd(3) << i0, 0.0, 0.0).finished();
  sc.initial.edge_profiles.assign(3, EdgeProfile{});
  return sc;
}

PresetScenario triangle_directed(const json& o) {
  check_keys(o, {"tau", "eta", "S0", "I0"});
  const double i0 = num(o, "I0", 1e-6);
  const double s0 = num(o, "S0", 1.0 / 3.0);

  PresetScenario sc;
  sc.validation = ValidationMode::Relaxed;
  // Edge A: v1-v2, B: v2-v3, C: v1-v3; cyclic exchange around the triangle.
  sc.graph = MetricGraph::build({"v1", "v2", "v3"},
                                {{"A", "v1", "v2", 1.0, 1.0},
                                 {"B", "v2", "v3", 1.0, 1e-2},
                                 {"C", "v1", "v3", 1.0, 1e-3}});
  auto coupling = [&](std::size_t v) {
    VertexCoupling c;
    c.alpha = Eigen::VectorXd::Zero(2);
    c.lambda = Eigen::VectorXd::Zero(2);
    c.nu = Eigen::MatrixXd::Zero(2, 2);
    auto slot = [&](const char* edge_id) {
      std::size_t e = sc.graph.edge_index(edge_id);
      const auto& inc = sc.graph.incidences(v);
      for (std::size_t k = 0; k < inc.size(); ++k)
        if (inc[k].edge == e) return static_cast<Eigen::Index>(k);
      throw config_error("edge not incident");
    };
    if (v == 0) {  // v1: edges A, C; alpha_A=0, lambda_A=1/20, nu C->A
      c.alpha[slot("C")] = 1.0 / 10.0;
      c.lambda[slot("A")] = 1.0 / 20.0;
      c.nu(slot("C"), slot("A")) = 1.0 / 30.0;
    } else if (v == 1) {  // v2: edges A, B; alpha_B=0, lambda_B=1/20, nu A->B
      c.alpha[slot("A")] = 1.0 / 10.0;
      c.lambda[slot("B")] = 1.0 / 20.0;
      c.nu(slot("A"), slot("B")) = 1.0 / 30.0;
    } else {  // v3: edges B, C; alpha_C=0, lambda_C=1/20, nu B->C
      c.alpha[slot("B")] = 1.0 / 10.0;
      c.lambda[slot("C")] = 1.0 / 20.0;
      c.nu(slot("B"), slot("C")) = 1.0 / 30.0;
    }
    return c;
  };
  for (std::size_t v = 0; v < 3; ++v) sc.couplings.push_back(coupling(v));
  sc.params.tau = vec(o, "tau", Eigen::VectorXd::Constant(3, 1.0));
  sc.params.eta = vec(o, "eta", Eigen::VectorXd::Constant(3, 1.0 / 7.0));
  sc.initial.S0 = Eigen::VectorXd::Constant(3, s0);
  sc.initial.I0 = (Eigen::VectorXd(3) << i0, 0.0, 0.0).finished();
  sc.initial.S0[0] -= i0;
  sc.initial.edge_profiles.assign(3, EdgeProfile{});
  return sc;
}

PresetScenario star4(const json& o) {
  check_keys(o, {"d", "length", "alpha", "lambda", "nu", "tau", "eta", "S0",
                 "I0", "epsilon", "tau_lock", "t_lock", "mu_lock",
                 "lockdown"});
  const double d = num(o, "d", 0.1);
  const double ell = num(o, "length", 1.0);
  const double alpha = num(o, "alpha", 1.0 / 8.0);
  const double lambda = num(o, "lambda", 1.0 / 20.0);
  const double nu = num(o, "nu", 1.0 / 20.0);
  const double tau = num(o, "tau", 1.0);
  const double eta = num(o, "eta", 1.0 / 8.0);
  const double s0 = num(o, "S0", 0.25);
  const double i0 = num(o, "I0", 1e-6);
  const double eps = num(o, "epsilon", 1e-2);
  const double tau_lock = num(o, "tau_lock", 0.6);
  const double t_lock = num(o, "t_lock", 50.0);
  const double mu_lock = num(o, "mu_lock", 100.0);
  bool lockdown = true;
  if (o.is_object() && o.contains("lockdown"))
    lockdown = o.at("lockdown").get<bool>();

  PresetScenario sc;
  sc.graph = MetricGraph::build({"v1", "v2", "v3", "v4"},
                                {{"e1", "v1", "v2", ell, d},
                                 {"e2", "v2", "v3", ell, d},
                                 {"e3", "v2", "v4", ell, d}});
  for (std::size_t v = 0; v < 4; ++v)
    sc.couplings.push_back(uniform_coupling(sc.graph.degree(v), alpha,
                                            lambda, nu));
  sc.params.tau = Eigen::VectorXd::Constant(4, tau);
  sc.params.eta = Eigen::VectorXd::Constant(4, eta);
  if (lockdown) {
    Schedule tau_sched{Schedule::Kind::LockdownSigmoid, tau, tau_lock, t_lock,
                       mu_lock};
    sc.params.tau_schedule.assign(4, tau_sched);
    // Exchanges shut down at the hub only.
    sc.params.exchange_schedule.assign(4, Schedule::constant(1.0));
    sc.params.exchange_schedule[1] =
        Schedule{Schedule::Kind::LockdownDecay, 1.0, 0.0, t_lock, mu_lock};
  }
  sc.initial.S0 =
      (Eigen::VectorXd(4) << s0 - i0, s0, s0 - eps, s0 + eps).finished();
  sc.initial.I0 = (Eigen::VectorXd(4) << i0, 0.0, 0.0, 0.0).finished();
  sc.initial.edge_profiles.assign(3, EdgeProfile{});
  return sc;
}

PresetScenario lattice(const json& o, long n_edges) {
  check_keys(o, {"N", "d", "length", "alpha", "lambda", "nu", "tau", "eta",
                 "S0", "I0", "seed"});
  if (o.is_object() && o.contains("N")) n_edges = o.at("N").get<long>();
  if (n_edges < 1) throw config_error("lattice needs N >= 1");
  const double d = num(o, "d", 1e-3);
  const double ell = num(o, "length", 1.0);
  const double alpha = num(o, "alpha", 1.0 / 8.0);
  const double lambda = num(o, "lambda", 1.0 / 10.0);
  const double nu = num(o, "nu", 1.0 / 20.0);
  const double tau = num(o, "tau", 1.0);
  const double eta = num(o, "eta", 1.0 / 75.0);
  const double s0 = num(o, "S0", 1.0 / 25.0);
  const double i0 = num(o, "I0", 1e-6);
  std::string seed = "left";
  if (o.is_object() && o.contains("seed"))
    seed = o.at("seed").get<std::string>();

  const long nv = n_edges + 1;
  std::vector<VertexId> ids;
  std::vector<EdgeSpec> edges;
  for (long j = 1; j <= nv; ++j) ids.push_back("v" + std::to_string(j));
  for (long j = 1; j <= n_edges; ++j)
    edges.push_back({"e" + std::to_string(j), "v" + std::to_string(j),
                     "v" + std::to_string(j + 1), ell, d});

  PresetScenario sc;
  sc.graph = MetricGraph::build(std::move(ids), std::move(edges));
  for (std::size_t v = 0; v < static_cast<std::size_t>(nv); ++v)
    sc.couplings.push_back(uniform_coupling(sc.graph.degree(v), alpha,
                                            lambda, nu));
  sc.params.tau = Eigen::VectorXd::Constant(nv, tau);
  sc.params.eta = Eigen::VectorXd::Constant(nv, eta);
  sc.initial.S0 = Eigen::VectorXd::Constant(nv, s0);
  sc.initial.I0 = Eigen::VectorXd::Zero(nv);
  std::vector<long> seeds;
  if (seed == "left") {
    seeds = {0};
  } else if (seed == "middle") {
    seeds = {nv / 2};
  } else if (seed == "both") {
    seeds = {0, nv - 1};
  } else {
    throw config_error("lattice seed must be 'left', 'middle' or 'both'");
  }
  for (long j : seeds) {
    sc.initial.I0[j] = i0;
    sc.initial.S0[j] -= i0;
  }
  sc.initial.edge_profiles.assign(static_cast<std::size_t>(n_edges),
                                  EdgeProfile{});
  return sc;
}

}  // namespace

PresetScenario build_preset(const std::string& name, const json& overrides) {
  if (name == "two_vertex") return two_vertex(overrides);
  if (name == "triangle") return triangle(overrides);
  if (name == "triangle_directed") return triangle_directed(overrides);
  if (name == "star4") return star4(overrides);
  if (name == "lattice") return lattice(overrides, 24);
  // lattice(N) form
  if (name.rfind("lattice(", 0) == 0 && name.back() == ')') {
    const std::string inner = name.substr(8, name.size() - 9);
    try {
      return lattice(overrides, std::stol(inner));
    } catch (const std::logic_error&) {
      throw config_error("UnknownPreset: " + name);
    }
  }
  throw config_error("UnknownPreset: " + name);
}

PresetScenario build_preset(const std::string& name) {
  return build_preset(name, json(nullptr));
}

}  // namespace sirgraph
