#include "sirgraph/solver.hpp"

#include <cmath>
#include <utility>

namespace sirgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dominance_margin(const VertexCoupling& c, Eigen::Index k) {
  // alpha_k + sum_{j!=k} nu(k,j) - sum_{l!=k} nu(l,k)
  double m = c.alpha(k);
  for (Eigen::Index j = 0; j < c.nu.rows(); ++j) {
    if (j == k) continue;
    m += c.nu(k, j) - c.nu(j, k);
  }
  return m;
}

}  // namespace

double dt_stability_bound(const MetricGraph& graph,
                          const std::vector<VertexCoupling>& couplings,
                          const EpidemicParams& params) {
  double bound = kInf;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const VertexCoupling& c = couplings[v];
    double eta = params.eta(static_cast<Eigen::Index>(v));
    double lambda_bar = c.lambda.sum();
    double alpha_sum = c.alpha.sum();
    for (Eigen::Index k = 0; k < c.alpha.size(); ++k) {
      double num = dominance_margin(c, k);
      if (!(num > 0.0)) continue;  // outside the dominance hypothesis
      double den = c.lambda(k) * alpha_sum - (eta + lambda_bar) * num;
      if (den > 0.0) bound = std::min(bound, num / den);
    }
  }
  return bound;
}

DiscreteSystem::DiscreteSystem(const MetricGraph& graph, const Grid& grid,
                               std::vector<VertexCoupling> couplings,
                               EpidemicParams params, double dt,
                               bool allow_unstable_dt)
    : graph_(graph),
      grid_(grid),
      couplings_(std::move(couplings)),
      params_(std::move(params)),
      dt_(dt) {
  if (!(dt_ > 0.0)) throw config_error("dt must be positive");
  params_.validate(graph_.vertex_count());
  double c0 = dt_stability_bound(graph_, couplings_, params_);
  if (dt_ >= c0 && !allow_unstable_dt)
    throw stability_error("UnstableDt: dt = " + std::to_string(dt_) +
                          " >= stability bound " + std::to_string(c0));
  assemble(dt_);
}

VertexCoupling DiscreteSystem::coupling_at(std::size_t v, double t) const {
  VertexCoupling c = couplings_[v];
  double f = params_.exchange_factor_at(v, t);
  if (f != 1.0) {
    c.alpha *= f;
    c.lambda *= f;
    c.nu *= f;
  }
  return c;
}

DiscreteSystem::Snapshot DiscreteSystem::snapshot_at(double t) const {
  Snapshot s;
  for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
    double f = params_.exchange_factor_at(v, t);
    s.values.push_back(f);
  }
  return s;
}

bool DiscreteSystem::Snapshot::within_tolerance(const Snapshot& other) const {
  if (values.size() != other.values.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double diff = std::abs(values[i] - other.values[i]);
    if (diff > 1e-14 * std::max(1.0, std::abs(values[i]))) return false;
  }
  return true;
}

void DiscreteSystem::assemble(double t_next) {
  const auto n = static_cast<Eigen::Index>(grid_.total_points());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 3 + 16);

  // Interior rows: U_i - r (U_{i-1} - 2 U_i + U_{i+1}), r = d dt / dx^2.
  for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
    double d = graph_.edges()[e].diffusivity;
    if (d == 0.0) continue;  // inert edge
    double dx = grid_.edge_dx(e);
    double r = d * dt_ / (dx * dx);
    auto j0 = static_cast<Eigen::Index>(grid_.edge_offset(e));
    auto je = static_cast<Eigen::Index>(grid_.edge_points(e));
    for (Eigen::Index i = 1; i + 1 < je; ++i) {
      trip.emplace_back(j0 + i, j0 + i, 2.0 * r);
      trip.emplace_back(j0 + i, j0 + i - 1, -r);
      trip.emplace_back(j0 + i, j0 + i + 1, -r);
    }
  }

  // Vertex rows: ghost-eliminated Laplacian with the I^{m+1} contribution
  // folded back, so only U^{m+1} unknowns appear.
  for (std::size_t v = 0; v < graph_.vertex_count(); ++v) {
    VertexCoupling c = coupling_at(v, t_next);
    double eta = params_.eta(static_cast<Eigen::Index>(v));
    double lambda_bar = c.lambda.sum();
    const auto deg = static_cast<Eigen::Index>(graph_.degree(v));
    for (Eigen::Index k = 0; k < deg; ++k) {
      auto ks = static_cast<std::size_t>(k);
      std::size_t edge = graph_.incidences(v)[ks].edge;
      double d = graph_.edges()[edge].diffusivity;
      if (d == 0.0) continue;
      double dx = grid_.edge_dx(edge);
      auto row = static_cast<Eigen::Index>(grid_.sigma(v, ks));
      auto nb = static_cast<Eigen::Index>(grid_.neighbor(v, ks));
      trip.emplace_back(row, row, 2.0 * d * dt_ / (dx * dx));
      trip.emplace_back(row, nb, -2.0 * d * dt_ / (dx * dx));
      double fold = dt_ * c.lambda(k) / (1.0 + dt_ * (eta + lambda_bar));
      double scale = 2.0 * dt_ / dx;
      for (Eigen::Index l = 0; l < deg; ++l) {
        auto col = static_cast<Eigen::Index>(
            grid_.sigma(v, static_cast<std::size_t>(l)));
        double nkl = 0.0;
        if (l == k) {
          for (Eigen::Index j = 0; j < deg; ++j)
            if (j != k) nkl += c.nu(k, j);
        } else {
          nkl = -c.nu(l, k);
        }
        double coeff = scale * (nkl + (l == k ? c.alpha(k) : 0.0) -
                                fold * c.alpha(l));
        if (coeff != 0.0) trip.emplace_back(row, col, coeff);
      }
    }
  }

  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<double> id(n, n);
  id.setIdentity();
  op_ = id + a;
  if (n > 0) {
    lu_.compute(op_);
    if (lu_.info() != Eigen::Success)
      throw numerical_error(
          "SingularSystem: implicit operator factorization failed");
  }
  current_ = snapshot_at(t_next);
  assembled_ = true;
  ++n_factorizations_;
}

SystemState DiscreteSystem::step(const SystemState& state) {
  const double t_next = state.t + dt_;
  Snapshot snap = snapshot_at(t_next);
  if (!snap.within_tolerance(current_)) assemble(t_next);

  const auto nv = static_cast<Eigen::Index>(graph_.vertex_count());
  Eigen::VectorXd rhs = state.u;
  // G_v is the edge-independent part of I^{m+1}; it also drives Y^m.
  Eigen::VectorXd g(nv), inv_loss(nv);
  for (Eigen::Index v = 0; v < nv; ++v) {
    auto vs = static_cast<std::size_t>(v);
    VertexCoupling c = coupling_at(vs, t_next);
    double eta = params_.eta(v);
    double lambda_bar = c.lambda.sum();
    double tau = params_.tau_at(vs, state.t);
    double sv = state.S(v), iv = state.I(v);
    inv_loss(v) = 1.0 / (1.0 + dt_ * (eta + lambda_bar));
    g(v) = (iv + dt_ * tau * iv * (sv + iv)) * inv_loss(v) /
           (1.0 + dt_ * tau * iv);
    const auto deg = static_cast<Eigen::Index>(graph_.degree(vs));
    for (Eigen::Index k = 0; k < deg; ++k) {
      auto ks = static_cast<std::size_t>(k);
      std::size_t edge = graph_.incidences(vs)[ks].edge;
      if (graph_.edges()[edge].diffusivity == 0.0) continue;
      double dx = grid_.edge_dx(edge);
      rhs(static_cast<Eigen::Index>(grid_.sigma(vs, ks))) +=
          (2.0 * dt_ * c.lambda(k) / dx) * g(v);
    }
  }

  SystemState next;
  next.t = t_next;
  if (rhs.size() > 0) {
    next.u = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success)
      throw numerical_error("linear solve failed at t = " +
                            std::to_string(t_next));
  } else {
    next.u = rhs;
  }

  next.S.resize(nv);
  next.I.resize(nv);
  next.R.resize(nv);
  last_influx_.setZero(nv);
  for (Eigen::Index v = 0; v < nv; ++v) {
    auto vs = static_cast<std::size_t>(v);
    VertexCoupling c = coupling_at(vs, t_next);
    double tau = params_.tau_at(vs, state.t);
    double eta = params_.eta(v);
    next.S(v) = state.S(v) / (1.0 + dt_ * tau * state.I(v));
    double influx = 0.0;
    const auto deg = static_cast<Eigen::Index>(graph_.degree(vs));
    for (Eigen::Index k = 0; k < deg; ++k) {
      auto ks = static_cast<std::size_t>(k);
      std::size_t edge = graph_.incidences(vs)[ks].edge;
      if (graph_.edges()[edge].diffusivity == 0.0) continue;
      influx += c.alpha(k) *
                next.u(static_cast<Eigen::Index>(grid_.sigma(vs, ks)));
    }
    last_influx_(v) = influx;
    next.I(v) = g(v) + dt_ * inv_loss(v) * influx;
    next.R(v) = state.R(v) + dt_ * eta * next.I(v);
  }

  if (!next.u.allFinite() || !next.S.allFinite() || !next.I.allFinite() ||
      !next.R.allFinite())
    throw numerical_error("NonFiniteState at t = " + std::to_string(t_next));
  return next;
}

double DiscreteSystem::discrete_mass(const SystemState& state) const {
  return grid_.trapezoid(state.u) + state.S.sum() + state.I.sum() +
         state.R.sum();
}

SystemState make_initial_state(const MetricGraph& graph, const Grid& grid,
                               const InitialData& initial) {
  initial.validate(graph);
  SystemState s;
  s.u = sample_edge_field(graph, grid, initial);
  s.S = initial.S0;
  s.I = initial.I0;
  s.R = Eigen::VectorXd::Zero(initial.S0.size());
  s.t = 0.0;
  return s;
}

Trajectory simulate(const MetricGraph& graph,
                    const std::vector<VertexCoupling>& couplings,
                    const EpidemicParams& params, const Grid& grid,
                    const SystemState& initial_state,
                    const SimulateOptions& options) {
  if (!(options.t_end > 0.0)) throw config_error("t_end must be positive");
  DiscreteSystem system(graph, grid, couplings, params, options.dt,
                        options.allow_unstable_dt);

  Trajectory traj;
  traj.m0 = system.discrete_mass(initial_state);
  const auto nv = static_cast<Eigen::Index>(graph.vertex_count());
  traj.influx_integral = Eigen::VectorXd::Zero(nv);
  traj.peaks.assign(static_cast<std::size_t>(nv), VertexPeak{});
  for (Eigen::Index v = 0; v < nv; ++v) {
    traj.peaks[static_cast<std::size_t>(v)] = {0.0, initial_state.I(v)};
  }

  auto record = [&](const SystemState& s) {
    ScalarRecord rec;
    rec.t = s.t;
    rec.S = s.S;
    rec.I = s.I;
    rec.R = s.R;
    rec.edge_mass = grid.trapezoid(s.u);
    rec.total_mass = rec.edge_mass + s.S.sum() + s.I.sum() + s.R.sum();
    traj.records.push_back(std::move(rec));
    if (options.record_fields) traj.snapshots.push_back({s.t, s.u});
  };

  SystemState state = initial_state;
  record(state);

  const auto n_steps =
      static_cast<std::size_t>(std::ceil(options.t_end / options.dt - 1e-9));
  std::size_t m = 0;
  bool recorded_last = true;
  for (; m < n_steps; ++m) {
    try {
      state = system.step(state);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::Numerical)
        throw numerical_error(std::string(err.what()) + " (step " +
                              std::to_string(m + 1) + ")");
      throw;
    }
    ++traj.steps;
    traj.influx_integral += options.dt * system.last_influx();

    double mass = system.discrete_mass(state);
    traj.mass_drift_max =
        std::max(traj.mass_drift_max, std::abs(mass - traj.m0));
    for (Eigen::Index v = 0; v < nv; ++v) {
      auto& p = traj.peaks[static_cast<std::size_t>(v)];
      if (state.I(v) > p.i_max) p = {state.t, state.I(v)};
    }

    recorded_last = ((m + 1) % options.record_every == 0);
    if (recorded_last) record(state);

    if (options.steady_stop) {
      double active = state.I.sum() + grid.trapezoid(state.u);
      if (active < options.steady_tol * traj.m0) {
        traj.reached_steady_state = true;
        break;
      }
    }
  }
  if (!recorded_last) record(state);
  traj.final_state = std::move(state);
  return traj;
}

std::vector<VertexPeak> detect_peaks(const Trajectory& trajectory) {
  if (trajectory.records.size() < 2)
    throw config_error("peak detection requires at least two samples");
  const auto nv = trajectory.records.front().I.size();
  std::vector<VertexPeak> peaks(static_cast<std::size_t>(nv));
  for (Eigen::Index v = 0; v < nv; ++v) {
    VertexPeak best{trajectory.records.front().t,
                    trajectory.records.front().I(v)};
    for (const auto& rec : trajectory.records) {
      if (rec.I(v) > best.i_max) best = {rec.t, rec.I(v)};
    }
    peaks[static_cast<std::size_t>(v)] = best;
  }
  return peaks;
}

}  // namespace sirgraph
