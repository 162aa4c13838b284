#include "sirgraph/config.hpp"

#include <fstream>
#include <sstream>

#include "sirgraph/errors.hpp"

namespace sirgraph {

namespace {

using nlohmann::json;

Eigen::VectorXd to_vector(const json& v, Eigen::Index n, const char* what) {
  if (v.is_number()) return Eigen::VectorXd::Constant(n, v.get<double>());
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != n)
    throw config_error(std::string(what) + " must be a number or an array of length " +
                       std::to_string(n));
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out[i] = v.at(static_cast<std::size_t>(i)).get<double>();
  return out;
}

Schedule parse_schedule(const json& s) {
  Schedule out;
  const std::string kind = s.value("kind", "constant");
  if (kind == "constant")
    out.kind = Schedule::Kind::Constant;
  else if (kind == "lockdown_sigmoid")
    out.kind = Schedule::Kind::LockdownSigmoid;
  else if (kind == "lockdown_decay")
    out.kind = Schedule::Kind::LockdownDecay;
  else
    throw config_error("unknown schedule kind '" + kind + "'");
  out.base = s.value("base", 0.0);
  out.locked = s.value("locked", 0.0);
  out.t_lock = s.value("t_lock", 0.0);
  out.mu = s.value("mu", 0.0);
  return out;
}

EdgeProfile parse_profile(const json& p) {
  EdgeProfile out;
  const std::string kind = p.value("kind", "zero");
  if (kind == "zero") {
    out.kind = EdgeProfile::Kind::Zero;
  } else if (kind == "boundary_layer") {
    out.kind = EdgeProfile::Kind::BoundaryLayer;
    out.bl_lambda1 = p.value("lambda1", 0.0);
    out.bl_alpha1 = p.value("alpha1", 1.0);
    out.bl_alpha2 = p.value("alpha2", 0.0);
    out.bl_i0 = p.value("I0", 0.0);
  } else if (kind == "samples") {
    out.kind = EdgeProfile::Kind::Samples;
    out.samples = p.at("values").get<std::vector<double>>();
  } else {
    throw config_error("unknown edge profile kind '" + kind + "'");
  }
  return out;
}

PresetScenario materialize_explicit(const json& doc) {
  const json& gspec = doc.at("graph");
  std::vector<VertexId> vertices =
      gspec.at("vertices").get<std::vector<VertexId>>();
  std::vector<EdgeSpec> edges;
  for (const json& e : gspec.at("edges")) {
    EdgeSpec spec;
    spec.id = e.at("id").get<std::string>();
    spec.from = e.at("from").get<std::string>();
    spec.to = e.at("to").get<std::string>();
    spec.length = e.value("length", 1.0);
    spec.diffusivity = e.value("diffusivity", 1.0);
    edges.push_back(std::move(spec));
  }

  PresetScenario sc;
  sc.graph = MetricGraph::build(std::move(vertices), std::move(edges));
  const auto nv = static_cast<Eigen::Index>(sc.graph.vertex_count());

  const json& cspec = doc.at("couplings");
  for (std::size_t v = 0; v < sc.graph.vertex_count(); ++v) {
    const auto deg = static_cast<Eigen::Index>(sc.graph.degree(v));
    const json& c = cspec.at(sc.graph.vertices()[v]);
    VertexCoupling vc;
    vc.alpha = to_vector(c.at("alpha"), deg, "alpha");
    vc.lambda = to_vector(c.at("lambda"), deg, "lambda");
    vc.nu = Eigen::MatrixXd::Zero(deg, deg);
    if (c.contains("nu")) {
      const json& nu = c.at("nu");
      if (nu.is_number()) {
        vc.nu.setConstant(nu.get<double>());
        vc.nu.diagonal().setZero();
      } else {
        if (static_cast<Eigen::Index>(nu.size()) != deg)
          throw config_error("nu at vertex '" + sc.graph.vertices()[v] +
                             "' must be a number or a " + std::to_string(deg) +
                             "x" + std::to_string(deg) + " matrix");
        for (Eigen::Index i = 0; i < deg; ++i)
          for (Eigen::Index j = 0; j < deg; ++j)
            vc.nu(i, j) = nu.at(static_cast<std::size_t>(i))
                              .at(static_cast<std::size_t>(j))
                              .get<double>();
      }
    }
    sc.couplings.push_back(std::move(vc));
  }

  const json& pspec = doc.at("params");
  sc.params.tau = to_vector(pspec.at("tau"), nv, "tau");
  sc.params.eta = to_vector(pspec.at("eta"), nv, "eta");
  if (pspec.contains("tau_schedule"))
    for (const json& s : pspec.at("tau_schedule"))
      sc.params.tau_schedule.push_back(parse_schedule(s));
  if (pspec.contains("exchange_schedule"))
    for (const json& s : pspec.at("exchange_schedule"))
      sc.params.exchange_schedule.push_back(parse_schedule(s));

  const json& ispec = doc.at("initial");
  sc.initial.S0 = to_vector(ispec.at("S0"), nv, "S0");
  sc.initial.I0 = to_vector(ispec.at("I0"), nv, "I0");
  sc.initial.edge_profiles.assign(sc.graph.edge_count(), EdgeProfile{});
  if (ispec.contains("edge_profiles")) {
    for (auto it = ispec.at("edge_profiles").begin();
         it != ispec.at("edge_profiles").end(); ++it) {
      std::size_t e = sc.graph.edge_index(it.key());
      sc.initial.edge_profiles[e] = parse_profile(it.value());
    }
  }

  if (doc.value("validation", std::string("strict")) == "relaxed")
    sc.validation = ValidationMode::Relaxed;
  return sc;
}

}  // namespace

SimulationConfig parse_config_json(const json& doc) {
  std::vector<std::string> problems;
  auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };

  if (!doc.is_object()) throw config_error("ValidationError: config must be a JSON object");

  const bool has_preset = doc.contains("preset");
  const bool has_graph = doc.contains("graph");
  if (has_preset == has_graph)
    fail("exactly one of 'preset' and 'graph' must be given");
  if (has_graph) {
    for (const char* key : {"couplings", "params", "initial"})
      if (!doc.contains(key))
        fail(std::string("explicit graph config requires '") + key + "'");
  }

  SimulationConfig cfg;
  if (doc.contains("scheme")) {
    const json& s = doc.at("scheme");
    cfg.scheme.dt = s.value("dt", cfg.scheme.dt);
    cfg.scheme.dx = s.value("dx", cfg.scheme.dx);
    cfg.scheme.t_end = s.value("t_end", cfg.scheme.t_end);
    if (s.contains("record_every")) {
      auto r = s.at("record_every").get<long long>();
      if (r < 1)
        fail("scheme.record_every must be >= 1");
      else
        cfg.scheme.record_every = static_cast<std::size_t>(r);
    }
    cfg.scheme.steady_stop = s.value("steady_stop", cfg.scheme.steady_stop);
    cfg.scheme.steady_tol = s.value("steady_tol", cfg.scheme.steady_tol);
    cfg.scheme.allow_unstable_dt =
        s.value("allow_unstable_dt", cfg.scheme.allow_unstable_dt);
    cfg.scheme.record_fields =
        s.value("record_fields", cfg.scheme.record_fields);
  }
  if (!(cfg.scheme.dt > 0.0)) fail("scheme.dt must be positive");
  if (!(cfg.scheme.dx > 0.0)) fail("scheme.dx must be positive");
  if (!(cfg.scheme.t_end > 0.0)) fail("scheme.t_end must be positive");
  if (!(cfg.scheme.steady_tol > 0.0)) fail("scheme.steady_tol must be positive");

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    cfg.output.trajectory_csv = o.value("trajectory_csv", "");
    cfg.output.summary_json = o.value("summary_json", "");
    cfg.output.fields_csv = o.value("fields_csv", "");
    cfg.output.table_csv = o.value("table_csv", "");
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    SweepConfig sweep;
    if (!s.contains("parameter") || !s.at("parameter").is_string())
      fail("sweep.parameter must be a JSON-pointer string");
    else
      sweep.parameter = s.at("parameter").get<std::string>();
    if (!s.contains("values") || !s.at("values").is_array())
      fail("sweep.values must be an array of numbers");
    else
      for (const json& v : s.at("values")) {
        if (!v.is_number()) {
          fail("sweep.values must contain only numbers");
          break;
        }
        sweep.values.push_back(v.get<double>());
      }
    if (!sweep.parameter.empty() && sweep.parameter.front() != '/')
      fail("sweep.parameter must start with '/'");
    cfg.sweep = std::move(sweep);
  }

  cfg.normalized = doc;
  cfg.normalized.erase("sweep");

  if (problems.empty()) {
    // Materialize once so structural errors surface alongside the rest.
    try {
      materialize(cfg);
    } catch (const Error& e) {
      fail(e.what());
    } catch (const json::exception& e) {
      fail(e.what());
    }
  }

  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "ValidationError:";
    for (const auto& p : problems) msg << "\n  - " << p;
    throw config_error(msg.str());
  }
  return cfg;
}

SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("ParseError: ") + e.what());
  }
  return parse_config_json(doc);
}

PresetScenario materialize(const SimulationConfig& config) {
  const json& doc = config.normalized;
  if (doc.contains("preset")) {
    PresetScenario sc = build_preset(
        doc.at("preset").get<std::string>(),
        doc.contains("overrides") ? doc.at("overrides") : json(nullptr));
    if (doc.value("validation", std::string()) == "relaxed")
      sc.validation = ValidationMode::Relaxed;
    else if (doc.value("validation", std::string()) == "strict")
      sc.validation = ValidationMode::Strict;
    return sc;
  }
  return materialize_explicit(doc);
}

}  // namespace sirgraph
