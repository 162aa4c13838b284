#include "sirgraph/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "sirgraph/final_size.hpp"

namespace sirgraph {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json vec_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

void write_fields_csv(const std::string& path, const MetricGraph& graph,
                      const Grid& grid, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t,edge_id,x,u\n";
  for (const FieldSnapshot& snap : traj.snapshots) {
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      for (std::size_t i = 0; i < grid.edge_points(e); ++i) {
        double x = grid.edge_dx(e) * static_cast<double>(i);
        out << fmt17(snap.t) << ',' << graph.edges()[e].id << ','
            << fmt17(x) << ','
            << fmt17(snap.u(static_cast<Eigen::Index>(grid.edge_offset(e) + i)))
            << '\n';
      }
    }
  }
}

json summarize(const PresetScenario& sc, const Grid& grid,
               const SimulationConfig& config, const Trajectory& traj) {
  const auto nv = static_cast<Eigen::Index>(sc.graph.vertex_count());
  const SystemState& fin = traj.final_state;
  Eigen::VectorXd i_integral(nv);
  for (Eigen::Index v = 0; v < nv; ++v)
    i_integral[v] = fin.R[v] / sc.params.eta[v];
  Eigen::VectorXd lambda_bar(nv);
  for (Eigen::Index v = 0; v < nv; ++v)
    lambda_bar[v] = sc.couplings[static_cast<std::size_t>(v)].lambda.sum();

  json s;
  s["schema_version"] = kSummarySchemaVersion;
  s["dt"] = config.scheme.dt;
  s["dx"] = config.scheme.dx;
  s["t_end"] = config.scheme.t_end;
  s["steps"] = traj.steps;
  s["reached_steady_state"] = traj.reached_steady_state;
  s["m0"] = traj.m0;
  s["mass_drift_max"] = traj.mass_drift_max;
  s["vertices"] = sc.graph.vertices();
  s["final"] = {{"t", fin.t},
                {"S", vec_json(fin.S)},
                {"I", vec_json(fin.I)},
                {"R", vec_json(fin.R)},
                {"i_integral", vec_json(i_integral)}};
  s["manifold_residuals"] = {
      {"i", manifold_residual_i(i_integral, sc.initial.S0, sc.params.tau,
                                sc.params.eta, traj.m0)},
      {"s", manifold_residual_s(fin.S, sc.initial.S0, sc.params.tau,
                                sc.params.eta, traj.m0)},
      {"r", manifold_residual_r(fin.R, sc.initial.S0, sc.params.tau,
                                sc.params.eta, traj.m0)}};
  s["system_residuals"] = vec_json(final_size_system_residuals(
      i_integral, sc.initial.S0, sc.initial.I0, sc.params.tau, sc.params.eta,
      lambda_bar, traj.influx_integral));
  ReproductionNumbers rn =
      reproduction_numbers(sc.params, sc.initial, traj.m0);
  s["reproduction_numbers"] = {{"basic", vec_json(rn.basic)},
                               {"effective", vec_json(rn.effective)}};
  json peaks = json::array();
  for (std::size_t v = 0; v < sc.graph.vertex_count(); ++v)
    peaks.push_back({{"vertex", sc.graph.vertices()[v]},
                     {"t_max", traj.peaks[v].t_max},
                     {"i_max", traj.peaks[v].i_max}});
  s["peaks"] = peaks;
  s["bc_residual"] =
      vec_json(check_bc_compatibility(sc.graph, sc.couplings, grid,
                                      sc.initial));
  s["validation"] = validation_json(sc);
  return s;
}

}  // namespace

json validation_json(const PresetScenario& sc) {
  ValidationReport report =
      validate_hypotheses(sc.graph, sc.couplings, sc.validation);
  json violations = json::array(), warnings = json::array();
  for (const auto& e : report.entries) {
    json item = {{"vertex", e.vertex}, {"detail", e.detail}};
    (e.warning ? warnings : violations).push_back(item);
  }
  return {{"ok", report.ok()},
          {"mode", sc.validation == ValidationMode::Relaxed ? "relaxed"
                                                            : "strict"},
          {"violations", violations},
          {"warnings", warnings}};
}

void write_trajectory_csv(const std::string& path, const MetricGraph& graph,
                          const Trajectory& traj) {
  auto out = open_out(path);
  out << 't';
  for (const char* group : {"S", "I", "R"})
    for (const auto& v : graph.vertices()) out << ',' << group << '_' << v;
  out << ",edge_mass,total_mass\n";
  for (const ScalarRecord& rec : traj.records) {
    out << fmt17(rec.t);
    for (const Eigen::VectorXd* group : {&rec.S, &rec.I, &rec.R})
      for (Eigen::Index v = 0; v < group->size(); ++v)
        out << ',' << fmt17((*group)[v]);
    out << ',' << fmt17(rec.edge_mass) << ',' << fmt17(rec.total_mass)
        << '\n';
  }
}

RunArtifacts run_simulation(const SimulationConfig& config) {
  PresetScenario sc = materialize(config);
  ValidationReport report =
      validate_hypotheses(sc.graph, sc.couplings, sc.validation);
  if (!report.ok()) {
    std::string msg = "hypotheses violated:";
    for (const auto& e : report.entries)
      if (!e.warning) msg += "\n  - [" + e.vertex + "] " + e.detail;
    throw config_error(msg);
  }

  Grid grid = Grid::build(sc.graph, config.scheme.dx);
  SystemState initial = make_initial_state(sc.graph, grid, sc.initial);

  SimulateOptions opts;
  opts.dt = config.scheme.dt;
  opts.t_end = config.scheme.t_end;
  opts.record_every = config.scheme.record_every;
  opts.record_fields = config.scheme.record_fields;
  opts.steady_stop = config.scheme.steady_stop;
  opts.steady_tol = config.scheme.steady_tol;
  opts.allow_unstable_dt = config.scheme.allow_unstable_dt;

  RunArtifacts art;
  art.trajectory =
      simulate(sc.graph, sc.couplings, sc.params, grid, initial, opts);
  art.summary = summarize(sc, grid, config, art.trajectory);

  if (!config.output.trajectory_csv.empty())
    write_trajectory_csv(config.output.trajectory_csv, sc.graph,
                         art.trajectory);
  if (!config.output.fields_csv.empty())
    write_fields_csv(config.output.fields_csv, sc.graph, grid,
                     art.trajectory);
  if (!config.output.summary_json.empty())
    open_out(config.output.summary_json) << art.summary.dump(2) << '\n';
  return art;
}

json analyze(const SimulationConfig& config) {
  PresetScenario sc = materialize(config);
  const auto nv = static_cast<Eigen::Index>(sc.graph.vertex_count());

  Grid grid = Grid::build(sc.graph, config.scheme.dx);
  const double m0 = initial_mass(sc.graph, grid, sc.initial);

  json out;
  out["schema_version"] = kSummarySchemaVersion;
  out["validation"] = validation_json(sc);
  out["m0"] = m0;

  double c0 = dt_stability_bound(sc.graph, sc.couplings, sc.params);
  out["dt_unconstrained"] = !std::isfinite(c0);
  out["dt_stability_bound"] = std::isfinite(c0) ? json(c0) : json(nullptr);

  ReproductionNumbers rn = reproduction_numbers(sc.params, sc.initial, m0);
  out["reproduction_numbers"] = {{"basic", vec_json(rn.basic)},
                                 {"effective", vec_json(rn.effective)}};

  out["symmetric_final_size"] = nullptr;
  auto rel_spread = [](const Eigen::VectorXd& x) {
    double lo = x.minCoeff(), hi = x.maxCoeff();
    return (hi - lo) / std::max(1e-300, std::abs(hi));
  };
  double spread = std::max(
      std::max(rel_spread(sc.params.tau), rel_spread(sc.params.eta)),
      rel_spread(sc.initial.S0));
  if (spread <= 1e-3) {
    // Mean-parameter closed form; exact when the spread is zero.
    SymmetricFinalSize fs = final_size_symmetric(
        sc.params.tau.mean(), sc.params.eta.mean(), sc.initial.S0.mean(),
        m0 / static_cast<double>(nv));
    out["symmetric_final_size"] = {{"i_integral", fs.i_inf},
                                   {"S", fs.s_inf},
                                   {"R", fs.r_inf},
                                   {"parameter_spread", spread}};
  }

  out["two_vertex"] = nullptr;
  if (nv == 2) {
    TwoVertexParams p;
    for (int k = 0; k < 2; ++k) {
      p.tau[k] = sc.params.tau[k];
      p.eta[k] = sc.params.eta[k];
      p.s0[k] = sc.initial.S0[k];
      p.i0[k] = sc.initial.I0[k];
    }
    p.m0 = m0;
    TwoVertexBoxes box = two_vertex_boxes(p);
    auto iv = [](const Interval& i) { return json::array({i.lo, i.hi}); };
    out["two_vertex"] = {
        {"sigma_0", {box.sigma_0[0], box.sigma_0[1]}},
        {"sigma_m1", {box.sigma_m1[0], box.sigma_m1[1]}},
        {"iota_0", {box.iota_0[0], box.iota_0[1]}},
        {"iota_m1", {box.iota_m1[0], box.iota_m1[1]}},
        {"omega_s", {iv(box.omega_s[0]), iv(box.omega_s[1])}},
        {"omega_i", {iv(box.omega_i[0]), iv(box.omega_i[1])}},
        {"omega_r", {iv(box.omega_r[0]), iv(box.omega_r[1])}}};
  }

  if (!config.output.summary_json.empty())
    open_out(config.output.summary_json) << out.dump(2) << '\n';
  return out;
}

std::string sweep_table_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  // Header from the first successful row (vertex names are config-wide).
  const SweepRow* first = nullptr;
  for (const auto& r : rows)
    if (r.error.empty()) {
      first = &r;
      break;
    }
  out << "index,value,status";
  std::vector<std::string> vertices;
  if (first) {
    vertices = first->summary.at("vertices").get<std::vector<std::string>>();
    out << ",m0,mass_drift_max,manifold_residual_i";
    for (const char* g : {"S_inf", "i_integral", "R_inf", "t_max", "i_max"})
      for (const auto& v : vertices) out << ',' << g << '_' << v;
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.index << ',' << fmt17(r.value) << ','
        << (r.error.empty() ? "ok" : "error");
    if (r.error.empty() && first) {
      const json& s = r.summary;
      out << ',' << fmt17(s.at("m0").get<double>()) << ','
          << fmt17(s.at("mass_drift_max").get<double>()) << ','
          << fmt17(s.at("manifold_residuals").at("i").get<double>());
      for (const char* g : {"S", "i_integral", "R"})
        for (std::size_t v = 0; v < vertices.size(); ++v)
          out << ','
              << fmt17(s.at("final").at(g).at(v).get<double>());
      for (const char* g : {"t_max", "i_max"})
        for (std::size_t v = 0; v < vertices.size(); ++v)
          out << ',' << fmt17(s.at("peaks").at(v).at(g).get<double>());
    }
    out << '\n';
  }
  return out.str();
}

std::vector<SweepRow> run_sweep(const SimulationConfig& config) {
  if (!config.sweep)
    throw config_error("config has no sweep section");
  const SweepConfig& sweep = *config.sweep;

  std::vector<SweepRow> rows(sweep.values.size());
  if (!rows.empty()) {
    const json::json_pointer ptr(sweep.parameter);

    std::size_t workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SIRGRAPH_WORKERS")) {
      long w = std::atol(env);
      if (w >= 1) workers = static_cast<std::size_t>(w);
    }
    workers = std::max<std::size_t>(1, std::min(workers, rows.size()));

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= rows.size()) return;
        SweepRow& row = rows[i];
        row.index = i;
        row.value = sweep.values[i];
        try {
          json doc = config.normalized;
          doc[ptr] = row.value;
          // Per-run file outputs are suppressed; the table is the artifact.
          doc.erase("output");
          SimulationConfig point = parse_config_json(doc);
          row.summary = run_simulation(point).summary;
        } catch (const Error& e) {
          row.error = e.what();
          row.error_kind = e.kind();
        } catch (const std::exception& e) {
          row.error = e.what();
          row.error_kind = ErrorKind::Config;
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < workers; ++w)
      pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  if (!config.output.table_csv.empty())
    open_out(config.output.table_csv) << sweep_table_csv(rows);

  for (const auto& r : rows)
    if (!r.error.empty())
      throw Error(r.error_kind, "sweep value " + fmt17(r.value) +
                                    " (index " + std::to_string(r.index) +
                                    ") failed: " + r.error);
  return rows;
}

}  // namespace sirgraph
