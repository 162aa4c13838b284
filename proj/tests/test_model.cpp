#include <doctest.h>

#include <cmath>

#include "sirgraph/model.hpp"
#include "sirgraph/schedule.hpp"

using namespace sirgraph;

namespace {

MetricGraph segment(double len = 1.0, double d = 1.0) {
  return MetricGraph::build({"v1", "v2"}, {{"e", "v1", "v2", len, d}});
}

}  // namespace

TEST_CASE("grid resolution and index maps") {
  MetricGraph g = segment();
  Grid fine = Grid::build(g, 0.01);
  CHECK(fine.edge_points(0) == 101);
  CHECK(fine.edge_dx(0) == doctest::Approx(0.01).epsilon(1e-15));

  Grid coarse = Grid::build(g, 0.3);
  CHECK(coarse.edge_points(0) == 4);
  CHECK(coarse.edge_dx(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // sigma/neighbor follow the edge orientation
  CHECK(fine.sigma(0, 0) == 0);
  CHECK(fine.neighbor(0, 0) == 1);
  CHECK(fine.sigma(1, 0) == 100);
  CHECK(fine.neighbor(1, 0) == 99);

  CHECK_THROWS_AS(Grid::build(g, 0.6), Error);   // dx > len/2
  CHECK_THROWS_AS(Grid::build(g, -0.1), Error);
  CHECK_THROWS_AS(Grid::build(segment(0.1), 0.08), Error);  // J < 3
  CHECK_THROWS_AS(Grid::build(g, std::vector<double>{0.01, 0.01}), Error);
}

TEST_CASE("trapezoid quadrature") {
  MetricGraph g = segment(2.0);
  Grid grid = Grid::build(g, 0.1);
  Eigen::VectorXd u =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.total_points()),
                                3.0);
  CHECK(grid.trapezoid(u) == doctest::Approx(6.0).epsilon(1e-14));

  u.setZero();
  u(5) = 7.0;  // interior node
  CHECK(grid.trapezoid(u) == doctest::Approx(0.7).epsilon(1e-14));

  u.setZero();
  u(0) = 4.0;  // endpoint gets half weight
  CHECK(grid.trapezoid(u) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("schedules") {
  Schedule c = Schedule::constant(0.7);
  CHECK(c.at(0.0) == 0.7);
  CHECK(c.at(1e6) == 0.7);

  Schedule sig{Schedule::Kind::LockdownSigmoid, 1.0, 0.4, 50.0, 100.0};
  CHECK(sig.at(49.9) == 1.0);
  CHECK(sig.at(50.0) == 1.0);  // first branch is closed at t_lock
  // right limit of the second branch at t_lock is the average
  CHECK((1.0 * std::exp(-100.0 * 1e-12) + 0.4) /
            (1.0 + std::exp(-100.0 * 1e-12)) ==
        doctest::Approx(0.7).epsilon(1e-9));
  CHECK(sig.at(50.0 + 25.0 / 100.0) == doctest::Approx(0.4).epsilon(1e-6));

  Schedule dec{Schedule::Kind::LockdownDecay, 0.25, 0.0, 50.0, 100.0};
  CHECK(dec.at(10.0) == 0.25);
  CHECK(dec.at(50.01) == doctest::Approx(0.25 * std::exp(-1.0)));
}

TEST_CASE("params and initial-data validation") {
  EpidemicParams p;
  p.tau = Eigen::VectorXd::Constant(2, 1.0);
  p.eta = Eigen::VectorXd::Constant(2, 0.5);
  CHECK_NOTHROW(p.validate(2));
  CHECK_THROWS_AS(p.validate(3), Error);
  p.eta(1) = 0.0;
  CHECK_THROWS_AS(p.validate(2), Error);

  MetricGraph g = segment();
  InitialData init;
  init.S0 = Eigen::VectorXd::Constant(2, 0.5);
  init.I0 = (Eigen::VectorXd(2) << 1e-6, 0.0).finished();
  init.edge_profiles.assign(1, EdgeProfile{});
  CHECK_NOTHROW(init.validate(g));
  init.S0(0) = 0.0;
  CHECK_THROWS_AS(init.validate(g), Error);
  init.S0(0) = 0.5;
  init.I0(0) = -1e-9;
  CHECK_THROWS_AS(init.validate(g), Error);
  init.I0(0) = 0.0;  // a zero seed is a valid equilibrium
  CHECK_NOTHROW(init.validate(g));
  init.edge_profiles.clear();
  CHECK_THROWS_AS(init.validate(g), Error);
}

TEST_CASE("boundary-layer sampling and initial mass") {
  MetricGraph g = segment();
  Grid grid = Grid::build(g, 0.01);
  InitialData init;
  init.S0 = Eigen::VectorXd::Constant(2, 0.5);
  init.I0 = (Eigen::VectorXd(2) << 1e-6, 0.0).finished();
  EdgeProfile p;
  p.kind = EdgeProfile::Kind::BoundaryLayer;
  p.bl_lambda1 = 0.05;
  p.bl_alpha1 = 0.25;
  p.bl_alpha2 = 0.25;
  p.bl_i0 = 1e-6;
  init.edge_profiles = {p};

  Eigen::VectorXd u = sample_edge_field(g, grid, init);
  double amp = 0.05 * 1e-6 / 0.25;
  CHECK(u(0) == doctest::Approx(amp).epsilon(1e-14));
  CHECK(u(50) == doctest::Approx(amp * std::exp(-0.25 * 0.25 / 2.0)));
  CHECK(u.minCoeff() >= 0.0);

  double m0 = initial_mass(g, grid, init);
  CHECK(m0 ==
        doctest::Approx(1.0 + 1e-6 + grid.trapezoid(u)).epsilon(1e-14));

  // the boundary-layer profile nearly satisfies the Robin condition at v1
  VertexCoupling c;
  c.alpha = Eigen::VectorXd::Constant(1, 0.25);
  c.lambda = Eigen::VectorXd::Constant(1, 0.05);
  c.nu = Eigen::MatrixXd::Zero(1, 1);
  VertexCoupling c2 = c;
  c2.lambda(0) = 0.1;
  Eigen::VectorXd res = check_bc_compatibility(g, {c, c2}, grid, init);
  CHECK(res(0) < 1e-7);
}

TEST_CASE("sampled profiles must match the grid") {
  MetricGraph g = segment();
  Grid grid = Grid::build(g, 0.25);
  InitialData init;
  init.S0 = Eigen::VectorXd::Constant(2, 0.5);
  init.I0 = (Eigen::VectorXd(2) << 1e-6, 0.0).finished();
  EdgeProfile p;
  p.kind = EdgeProfile::Kind::Samples;
  p.samples = {0.0, 1.0, 2.0, 1.0, 0.0};
  init.edge_profiles = {p};
  Eigen::VectorXd u = sample_edge_field(g, grid, init);
  CHECK(u(2) == 2.0);
  p.samples = {0.0, 1.0};
  init.edge_profiles = {p};
  CHECK_THROWS_AS(sample_edge_field(g, grid, init), Error);
}

TEST_CASE("reproduction numbers") {
  EpidemicParams p;
  p.tau = (Eigen::VectorXd(2) << 1.0, 0.9).finished();
  p.eta = (Eigen::VectorXd(2) << 0.4, 1.0 / 3.0).finished();
  InitialData init;
  init.S0 = (Eigen::VectorXd(2) << 0.75, 0.25).finished();
  init.I0 = Eigen::VectorXd::Zero(2);
  ReproductionNumbers rn = reproduction_numbers(p, init, 1.0);
  CHECK(rn.basic(0) == doctest::Approx(2.5));
  CHECK(rn.basic(1) == doctest::Approx(2.7));
  CHECK(rn.effective(0) == doctest::Approx(0.75 / 0.4));
  CHECK(rn.effective(1) == doctest::Approx(0.25 * 0.9 * 3.0));
}
