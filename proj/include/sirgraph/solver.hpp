#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "sirgraph/graph.hpp"
#include "sirgraph/grid.hpp"
#include "sirgraph/model.hpp"

namespace sirgraph {

// Edge field samples plus per-vertex SIR populations at one time.
struct SystemState {
  Eigen::VectorXd u;  // size grid.total_points()
  Eigen::VectorXd S, I, R;
  double t = 0.0;
};

// The explicit time-step ceiling from the well-posedness argument:
//   min over (v, k) of num / [lambda_k sum(alpha) - (eta + lambda_bar) num]_+
// with num = alpha_k + sum_{j!=k} nu(k,j) - sum_{l!=k} nu(l,k).
// Returns +infinity when every positive part vanishes. Entries with
// num <= 0 fall outside the argument's assumptions and are skipped.
double dt_stability_bound(const MetricGraph& graph,
                          const std::vector<VertexCoupling>& couplings,
                          const EpidemicParams& params);

// Assembled semi-implicit system (Id + A) U^{m+1} = U^m + Y^m, with the
// ghost value at each vertex eliminated through the Robin condition and
// the I^{m+1} contribution folded back into the operator so the linear
// system involves the edge field only. Factorized once; refactorized only
// when a time-varying coefficient entering A changes.
class DiscreteSystem {
 public:
  DiscreteSystem(const MetricGraph& graph, const Grid& grid,
                 std::vector<VertexCoupling> couplings, EpidemicParams params,
                 double dt, bool allow_unstable_dt = false);

  // Advances one step of length dt. Throws on non-finite results.
  SystemState step(const SystemState& state);

  double dt() const { return dt_; }
  const Grid& grid() const { return grid_; }
  double discrete_mass(const SystemState& state) const;

  // Operator at the coefficients last used (identity + A), for inspection.
  const Eigen::SparseMatrix<double>& implicit_operator() const { return op_; }
  std::size_t refactorization_count() const { return n_factorizations_; }

  // Per-vertex sum alpha_k u^{m+1}(sigma_k) from the most recent step.
  const Eigen::VectorXd& last_influx() const { return last_influx_; }

 private:
  struct Snapshot {
    // Flattened alpha/lambda/nu per vertex, in incidence order.
    std::vector<double> values;
    bool within_tolerance(const Snapshot& other) const;
  };
  Snapshot snapshot_at(double t) const;
  VertexCoupling coupling_at(std::size_t v, double t) const;
  void assemble(double t_next);

  const MetricGraph& graph_;
  Grid grid_;
  std::vector<VertexCoupling> couplings_;
  EpidemicParams params_;
  double dt_;
  Eigen::SparseMatrix<double> op_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  Snapshot current_;
  bool assembled_ = false;
  std::size_t n_factorizations_ = 0;
  Eigen::VectorXd last_influx_;
};

struct ScalarRecord {
  double t = 0.0;
  Eigen::VectorXd S, I, R;
  double edge_mass = 0.0;
  double total_mass = 0.0;
};

struct FieldSnapshot {
  double t = 0.0;
  Eigen::VectorXd u;
};

struct VertexPeak {
  double t_max = 0.0;  // first global maximum of I_v(t)
  double i_max = 0.0;
};

struct Trajectory {
  std::vector<ScalarRecord> records;     // every record_every steps + final
  std::vector<FieldSnapshot> snapshots;  // only when requested
  std::vector<VertexPeak> peaks;         // tracked every step
  double m0 = 0.0;
  double mass_drift_max = 0.0;  // max_m |M^m - M^0|
  Eigen::VectorXd influx_integral;  // integral of sum alpha_k u(sigma_k) dt
  std::size_t steps = 0;
  bool reached_steady_state = false;
  SystemState final_state;
};

struct SimulateOptions {
  double dt = 0.01;
  double t_end = 100.0;
  std::size_t record_every = 1;
  bool record_fields = false;
  bool steady_stop = false;
  double steady_tol = 1e-10;  // stop when sum I + trap(u) < tol * M0
  bool allow_unstable_dt = false;
};

Trajectory simulate(const MetricGraph& graph,
                    const std::vector<VertexCoupling>& couplings,
                    const EpidemicParams& params, const Grid& grid,
                    const SystemState& initial_state,
                    const SimulateOptions& options);

SystemState make_initial_state(const MetricGraph& graph, const Grid& grid,
                               const InitialData& initial);

// Peak extraction from recorded samples (first-occurrence tie-break).
std::vector<VertexPeak> detect_peaks(const Trajectory& trajectory);

}  // namespace sirgraph
