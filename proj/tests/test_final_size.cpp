#include <doctest.h>

#include <cmath>

#include "sirgraph/final_size.hpp"
#include "sirgraph/lambert_w.hpp"

using namespace sirgraph;

namespace {

// Independent oracle: bisection on the scalar symmetric manifold equation
//   f(x) = S0 exp(-tau x) + eta x - m0_tilde = 0, x > 0.
double bisect_final_size(double tau, double eta, double s0, double m0_tilde) {
  auto f = [&](double x) {
    return s0 * std::exp(-tau * x) + eta * x - m0_tilde;
  };
  double lo = 1e-300, hi = m0_tilde / eta;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("manifold residual forms agree on consistent states") {
  Eigen::VectorXd tau(3), eta(3), s0(3), i_inf(3);
  tau << 1.0, 0.9, 1.2;
  eta << 0.4, 1.0 / 3.0, 0.25;
  s0 << 0.5, 0.3, 0.2;
  i_inf << 0.7, 0.4, 0.9;
  Eigen::VectorXd s_inf(3), r_inf(3);
  for (int v = 0; v < 3; ++v) {
    s_inf[v] = s0[v] * std::exp(-tau[v] * i_inf[v]);
    r_inf[v] = eta[v] * i_inf[v];
  }
  double m0 = 1.37;
  double ri = manifold_residual_i(i_inf, s0, tau, eta, m0);
  double rs = manifold_residual_s(s_inf, s0, tau, eta, m0);
  double rr = manifold_residual_r(r_inf, s0, tau, eta, m0);
  CHECK(ri == doctest::Approx(rs).epsilon(1e-13));
  CHECK(ri == doctest::Approx(rr).epsilon(1e-13));

  // exact zero when m0 matches the state
  double m_exact = m0 + ri;
  CHECK(manifold_residual_i(i_inf, s0, tau, eta, m_exact) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(
      manifold_residual_s(Eigen::VectorXd::Zero(3), s0, tau, eta, m0), Error);
  CHECK_THROWS_AS(
      manifold_residual_i(Eigen::VectorXd::Zero(2), s0, tau, eta, m0), Error);
}

TEST_CASE("symmetric closed form matches bisection oracle") {
  struct Case {
    double tau, eta, s0, m0_tilde;
  };
  for (const Case& c : {Case{1.0, 1.0 / 6.0, 1.0, 1.0 + 1e-6 / 3.0},
                        Case{1.0, 1.0 / 3.0, 0.5, 0.75},
                        Case{0.8, 0.3, 0.6, 0.9},
                        Case{2.0, 0.5, 0.4, 0.41}}) {
    SymmetricFinalSize fs =
        final_size_symmetric(c.tau, c.eta, c.s0, c.m0_tilde);
    double oracle = bisect_final_size(c.tau, c.eta, c.s0, c.m0_tilde);
    CHECK(fs.i_inf == doctest::Approx(oracle).epsilon(1e-11));
    CHECK(fs.s_inf ==
          doctest::Approx(c.s0 * std::exp(-c.tau * fs.i_inf)).epsilon(1e-11));
    CHECK(fs.r_inf == doctest::Approx(c.eta * fs.i_inf).epsilon(1e-11));
    // conservation: the point sits on the manifold
    CHECK(fs.s_inf + fs.r_inf == doctest::Approx(c.m0_tilde).epsilon(1e-12));

    SymmetricFinalSize fb = final_size_symmetric_bisection(
        c.tau, c.eta, c.s0, c.m0_tilde);
    CHECK(fb.i_inf == doctest::Approx(fs.i_inf).epsilon(1e-11));
  }
  // Frozen value (tau=1, eta=1/6, S0=1, m0_tilde=1): computed by scalar
  // bisection on S0 e^{-x} + x/6 = 1.
  SymmetricFinalSize fs = final_size_symmetric(1.0, 1.0 / 6.0, 1.0, 1.0);
  CHECK(fs.i_inf == doctest::Approx(5.9849012264025944).epsilon(1e-12));
}

TEST_CASE("asymmetric input is rejected by the vector form") {
  EpidemicParams p;
  p.tau = (Eigen::VectorXd(2) << 1.0, 1.0 + 1e-9).finished();
  p.eta = Eigen::VectorXd::Constant(2, 0.5);
  InitialData init;
  init.S0 = Eigen::VectorXd::Constant(2, 0.5);
  init.I0 = Eigen::VectorXd::Constant(2, 1e-6);
  CHECK_THROWS_AS(final_size_symmetric(p, init, 1.0, 2), Error);
  p.tau(1) = 1.0;
  CHECK_NOTHROW(final_size_symmetric(p, init, 1.0, 2));
}

TEST_CASE("two-vertex corner values invert the defining relation") {
  TwoVertexParams p;
  p.tau = {1.0, 0.9};
  p.eta = {0.4, 1.0 / 3.0};
  p.s0 = {0.75 - 1e-6, 0.25 - 1e-6};
  p.i0 = {1e-6, 1e-6};
  p.m0 = 1.0;

  TwoVertexBoxes box = two_vertex_boxes(p);
  for (int k = 0; k < 2; ++k) {
    const int j = 1 - k;
    const double g = p.tau[k] * p.eta[j] / (p.tau[j] * p.eta[k]);
    const double calA = p.re(k) * std::pow(p.re(j), g) *
                        std::exp(g * (1.0 - p.r0(j)));
    // Sigma solves y e^{-y} = A with y = tau/eta * Sigma, on both branches.
    for (double sigma : {box.sigma_0[k], box.sigma_m1[k]}) {
      double y = p.tau[k] / p.eta[k] * sigma;
      CHECK(y * std::exp(-y) == doctest::Approx(calA).epsilon(1e-10));
    }
    CHECK(box.sigma_0[k] <= box.sigma_m1[k]);  // W0 >= W-1, sigma negates
    CHECK(box.iota_m1[k] <= box.iota_0[k]);
    CHECK(box.omega_s[k].lo == doctest::Approx(box.sigma_0[k]));
    CHECK(box.omega_s[k].hi == doctest::Approx(p.s0[k]));
    CHECK(box.omega_i[k].lo == 0.0);
    CHECK(box.omega_i[k].hi == doctest::Approx(box.iota_0[k]));
    CHECK(box.omega_r[k].hi ==
          doctest::Approx(p.eta[k] * box.omega_i[k].hi));
  }
  // membership: interior point of both intervals with small enough sum
  CHECK(box.s_contains(box.omega_s[0].lo + 1e-6, box.omega_s[1].lo + 1e-6));
  CHECK_FALSE(box.s_contains(p.s0[0] + 1.0, box.omega_s[1].lo));
  CHECK_FALSE(box.s_contains(box.m0, box.m0));  // sum constraint
  CHECK(box.i_contains(0.0, 0.0));
  CHECK_FALSE(box.i_contains(-1.0, 0.0));
}

TEST_CASE("curve branches meet where the W argument hits the branch point") {
  TwoVertexParams p;
  p.tau = {1.0, 0.9};
  p.eta = {0.4, 1.0 / 3.0};
  p.s0 = {0.75 - 1e-6, 0.25 - 1e-6};
  p.i0 = {1e-6, 1e-6};
  p.m0 = 1.0;

  // scan S2 for the minimizer of the W argument magnitude margin
  auto arg = [&](double s2) {
    const double g = p.tau[0] * p.eta[1] / (p.tau[1] * p.eta[0]);
    return -std::exp(-p.r0(0)) * p.re(0) * std::pow(p.re(1), g) *
           std::exp(s2 * p.tau[0] / p.eta[0]) /
           std::pow(s2 * p.tau[1] / p.eta[1], g);
  };
  const double thr = -std::exp(-1.0);
  double best_s2 = 0.0;
  bool found = false;
  for (double s2 = 1e-3; s2 < p.s0[1]; s2 += 1e-5) {
    if (arg(s2) >= thr && (!found || arg(s2) < arg(best_s2))) {
      best_s2 = s2;
      found = true;
    }
  }
  REQUIRE(found);
  // refine toward the domain boundary arg = -1/e by bisection
  for (double s_out : {best_s2 - 1e-5, best_s2 + 1e-5}) {
    if (s_out <= 0.0 || arg(s_out) >= thr) continue;
    double a = best_s2, b = s_out;
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (a + b);
      (arg(mid) >= thr ? a : b) = mid;
    }
    best_s2 = a;
    break;
  }
  double w0 = two_vertex_s_curve(p, 0, WBranch::Principal, best_s2);
  double wm1 = two_vertex_s_curve(p, 0, WBranch::Lower, best_s2);
  CHECK(w0 == doctest::Approx(wm1).epsilon(1e-4));
  CHECK(w0 > 0.0);

  CHECK_THROWS_AS(two_vertex_s_curve(p, 0, WBranch::Principal, -0.1), Error);
  CHECK_THROWS_AS(two_vertex_s_curve(p, 2, WBranch::Principal, 0.1), Error);

  // grid form matches the scalar form point by point (in-domain abscissae)
  std::vector<double> grid{best_s2, best_s2, best_s2};
  auto curve = two_vertex_curve(p, 0, WBranch::Principal, grid);
  REQUIRE(curve.size() == 3);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(curve[i] ==
          doctest::Approx(two_vertex_s_curve(p, 0, WBranch::Principal,
                                             grid[i])));
}

TEST_CASE("system residuals: direct arithmetic") {
  Eigen::VectorXd i_inf(1), s0(1), i0(1), tau(1), eta(1), lb(1), influx(1);
  i_inf << 2.0;
  s0 << 0.5;
  i0 << 1e-3;
  tau << 1.0;
  eta << 0.25;
  lb << 0.1;
  influx << 0.04;
  double expect = 0.5 * std::exp(-2.0) + 0.25 * 2.0 - 1e-3 - 0.5 - 0.04 +
                  0.1 * 2.0;
  Eigen::VectorXd res =
      final_size_system_residuals(i_inf, s0, i0, tau, eta, lb, influx);
  CHECK(res(0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("bisection route handles the no-outbreak edge case") {
  SymmetricFinalSize fs =
      final_size_symmetric_bisection(1.0, 0.5, 0.4, 0.4);
  CHECK(fs.i_inf == doctest::Approx(0.0));
  CHECK(fs.s_inf == doctest::Approx(0.4));
  CHECK_THROWS_AS(final_size_symmetric_bisection(1.0, 0.5, 0.4, 0.1), Error);
}
