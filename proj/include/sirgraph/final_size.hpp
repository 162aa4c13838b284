#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "sirgraph/lambert_w.hpp"
#include "sirgraph/model.hpp"

namespace sirgraph {

// Final-size manifold residuals. All three forms agree algebraically under
// S_inf = S0 exp(-tau I_inf), R_inf = eta I_inf.
double manifold_residual_i(const Eigen::VectorXd& i_inf,
                           const Eigen::VectorXd& s0,
                           const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& eta, double m0);
double manifold_residual_s(const Eigen::VectorXd& s_inf,
                           const Eigen::VectorXd& s0,
                           const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& eta, double m0);
double manifold_residual_r(const Eigen::VectorXd& r_inf,
                           const Eigen::VectorXd& s0,
                           const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& eta, double m0);

struct SymmetricFinalSize {
  double i_inf = 0.0;  // cumulative infected integral per vertex
  double s_inf = 0.0;
  double r_inf = 0.0;
};

// Closed form for the fully symmetric configuration:
//   I_inf = W0(-Re exp(-R0/cV)) / tau + R0 / (cV tau).
// Throws AsymmetricInput when the parameter set is not symmetric to 1e-12.
SymmetricFinalSize final_size_symmetric(const EpidemicParams& params,
                                        const InitialData& initial, double m0,
                                        std::size_t n_vertices);

// Scalar core of the closed form, with m0_tilde = M0 / cV.
SymmetricFinalSize final_size_symmetric(double tau, double eta, double s0,
                                        double m0_tilde);

// Independent scalar-bisection route on the symmetric manifold equation
// S0 exp(-tau x) + eta x = M0 / cV; robust when the W argument grazes the
// branch point.
SymmetricFinalSize final_size_symmetric_bisection(double tau, double eta,
                                                  double s0, double m0_tilde);

struct TwoVertexParams {
  std::array<double, 2> tau{}, eta{}, s0{}, i0{};
  double m0 = 0.0;

  double r0(int k) const { return m0 * tau[k] / eta[k]; }
  double re(int k) const { return s0[k] * tau[k] / eta[k]; }
};

// S_{v1}^inf as a function of S_{v2}^inf on the requested W branch
// (and symmetrically with vertex = 1). Throws OutOfDomain when the W
// argument falls below -1/e.
double two_vertex_s_curve(const TwoVertexParams& p, int vertex, WBranch branch,
                          double s_other);
std::vector<double> two_vertex_curve(const TwoVertexParams& p, int vertex,
                                     WBranch branch,
                                     const std::vector<double>& s_other_grid);

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Corner values and clipped boxes bounding the two-vertex final state.
struct TwoVertexBoxes {
  std::array<double, 2> sigma_0{}, sigma_m1{};  // -(eta/tau) W_{0,-1}(-A_vk)
  std::array<double, 2> iota_0{}, iota_m1{};
  std::array<Interval, 2> omega_s{};  // [min sigma, S0_k], plus sum < M0
  std::array<Interval, 2> omega_i{};  // [0, max iota]
  std::array<Interval, 2> omega_r{};  // eta-scaled omega_i
  double m0 = 0.0;

  bool s_contains(double s1, double s2) const {
    return omega_s[0].contains(s1) && omega_s[1].contains(s2) &&
           s1 + s2 < m0;
  }
  bool i_contains(double i1, double i2) const {
    return omega_i[0].contains(i1) && omega_i[1].contains(i2);
  }
};

TwoVertexBoxes two_vertex_boxes(const TwoVertexParams& p);

// Residuals of the per-vertex final-size system fed by simulated
// time-integrals of the alpha-weighted edge influx:
//   S0 e^{-tau I} + eta I - I0 - S0 - integral + lambda_bar I  per vertex.
Eigen::VectorXd final_size_system_residuals(
    const Eigen::VectorXd& i_inf, const Eigen::VectorXd& s0,
    const Eigen::VectorXd& i0, const Eigen::VectorXd& tau,
    const Eigen::VectorXd& eta, const Eigen::VectorXd& lambda_bar,
    const Eigen::VectorXd& influx_integral);

}  // namespace sirgraph
