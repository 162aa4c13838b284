#include "sirgraph/final_size.hpp"

#include <algorithm>
#include <cmath>

#include "sirgraph/errors.hpp"

namespace sirgraph {

namespace {

double check_size(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                  const char* what) {
  if (a.size() != b.size())
    throw config_error(std::string("SizeMismatch: ") + what);
  return 0.0;
}

}  // namespace

double manifold_residual_i(const Eigen::VectorXd& i_inf,
                           const Eigen::VectorXd& s0,
                           const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& eta, double m0) {
  check_size(i_inf, s0, "i_inf/s0");
  check_size(i_inf, tau, "i_inf/tau");
  check_size(i_inf, eta, "i_inf/eta");
  double acc = 0.0;
  for (Eigen::Index v = 0; v < i_inf.size(); ++v)
    acc += s0[v] * std::exp(-tau[v] * i_inf[v]) + eta[v] * i_inf[v];
  return acc - m0;
}

double manifold_residual_s(const Eigen::VectorXd& s_inf,
                           const Eigen::VectorXd& s0,
                           const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& eta, double m0) {
  check_size(s_inf, s0, "s_inf/s0");
  double acc = 0.0;
  for (Eigen::Index v = 0; v < s_inf.size(); ++v) {
    if (s_inf[v] <= 0.0 || s0[v] <= 0.0)
      throw domain_error("OutOfDomain: nonpositive susceptible fraction");
    acc += s_inf[v] - eta[v] / tau[v] * std::log(s_inf[v] / s0[v]);
  }
  return acc - m0;
}

double manifold_residual_r(const Eigen::VectorXd& r_inf,
                           const Eigen::VectorXd& s0,
                           const Eigen::VectorXd& tau,
                           const Eigen::VectorXd& eta, double m0) {
  check_size(r_inf, s0, "r_inf/s0");
  double acc = 0.0;
  for (Eigen::Index v = 0; v < r_inf.size(); ++v)
    acc += s0[v] * std::exp(-tau[v] / eta[v] * r_inf[v]) + r_inf[v];
  return acc - m0;
}

SymmetricFinalSize final_size_symmetric(const EpidemicParams& params,
                                        const InitialData& initial, double m0,
                                        std::size_t n_vertices) {
  const double tol = 1e-12;
  auto spread = [](const Eigen::VectorXd& x) {
    return x.maxCoeff() - x.minCoeff();
  };
  if (spread(params.tau) > tol || spread(params.eta) > tol ||
      spread(initial.S0) > tol || spread(initial.I0) > tol)
    throw domain_error("AsymmetricInput: closed form needs identical vertices");

  return final_size_symmetric(params.tau[0], params.eta[0], initial.S0[0],
                              m0 / static_cast<double>(n_vertices));
}

SymmetricFinalSize final_size_symmetric(double tau, double eta, double s0,
                                        double m0_tilde) {
  const double r0 = m0_tilde * tau / eta;
  const double re = s0 * tau / eta;
  const double w = lambert_w0(-re * std::exp(-r0));
  SymmetricFinalSize out;
  out.i_inf = w / tau + r0 / tau;
  out.s_inf = -(eta / tau) * w;
  out.r_inf = eta / tau * w + m0_tilde;
  return out;
}

SymmetricFinalSize final_size_symmetric_bisection(double tau, double eta,
                                                  double s0,
                                                  double m0_tilde) {
  if (tau <= 0.0 || eta <= 0.0 || s0 <= 0.0 || m0_tilde < s0)
    throw domain_error("OutOfDomain: bisection needs tau,eta,s0>0, m0>=s0");
  auto f = [&](double x) {
    return s0 * std::exp(-tau * x) + eta * x - m0_tilde;
  };
  double lo = 0.0;
  double hi = m0_tilde / eta;
  if (f(lo) > 0.0) {
    // No infection seeded: the root is x = 0.
    SymmetricFinalSize out;
    out.s_inf = s0;
    out.r_inf = m0_tilde - s0;
    return out;
  }
  while (f(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  SymmetricFinalSize out;
  out.i_inf = 0.5 * (lo + hi);
  out.s_inf = s0 * std::exp(-tau * out.i_inf);
  out.r_inf = eta * out.i_inf;
  return out;
}

namespace {

// Exponent coupling the two vertices: gamma_1 = tau_1 eta_2 / (tau_2 eta_1).
double gamma_of(const TwoVertexParams& p, int k) {
  const int j = 1 - k;
  return p.tau[k] * p.eta[j] / (p.tau[j] * p.eta[k]);
}

double calA(const TwoVertexParams& p, int k) {
  const int j = 1 - k;
  const double g = gamma_of(p, k);
  return p.re(k) * std::pow(p.re(j), g) * std::exp(g * (1.0 - p.r0(j)));
}

}  // namespace

double two_vertex_s_curve(const TwoVertexParams& p, int vertex, WBranch branch,
                          double s_other) {
  if (vertex < 0 || vertex > 1) throw domain_error("OutOfDomain: vertex index");
  if (s_other <= 0.0)
    throw domain_error("OutOfDomain: curve needs positive S on other vertex");
  const int k = vertex;
  const int j = 1 - k;
  const double g = gamma_of(p, k);
  const double arg = -std::exp(-p.r0(k)) * p.re(k) * std::pow(p.re(j), g) *
                     std::exp(s_other * p.tau[k] / p.eta[k]) /
                     std::pow(s_other * p.tau[j] / p.eta[j], g);
  return -(p.eta[k] / p.tau[k]) * lambert_w(branch, arg);
}

std::vector<double> two_vertex_curve(const TwoVertexParams& p, int vertex,
                                     WBranch branch,
                                     const std::vector<double>& s_other_grid) {
  std::vector<double> out;
  out.reserve(s_other_grid.size());
  for (double s : s_other_grid)
    out.push_back(two_vertex_s_curve(p, vertex, branch, s));
  return out;
}

TwoVertexBoxes two_vertex_boxes(const TwoVertexParams& p) {
  TwoVertexBoxes box;
  box.m0 = p.m0;
  for (int k = 0; k < 2; ++k) {
    const int j = 1 - k;
    const double a = calA(p, k);
    const double g = gamma_of(p, k);
    box.sigma_0[k] = -(p.eta[k] / p.tau[k]) * lambert_w0(-a);
    box.sigma_m1[k] = -(p.eta[k] / p.tau[k]) * lambert_wm1(-a);
    const double shift = g * (p.r0(j) - 1.0 - std::log(p.re(j))) / p.tau[k];
    box.iota_0[k] = lambert_w0(-a) / p.tau[k] + shift;
    box.iota_m1[k] = lambert_wm1(-a) / p.tau[k] + shift;

    box.omega_s[k] = {std::min(box.sigma_0[k], box.sigma_m1[k]), p.s0[k]};
    const double i_hi = std::max(box.iota_0[k], box.iota_m1[k]);
    box.omega_i[k] = {0.0, i_hi};
    box.omega_r[k] = {0.0, p.eta[k] * i_hi};
  }
  return box;
}

Eigen::VectorXd final_size_system_residuals(
    const Eigen::VectorXd& i_inf, const Eigen::VectorXd& s0,
    const Eigen::VectorXd& i0, const Eigen::VectorXd& tau,
    const Eigen::VectorXd& eta, const Eigen::VectorXd& lambda_bar,
    const Eigen::VectorXd& influx_integral) {
  check_size(i_inf, s0, "i_inf/s0");
  check_size(i_inf, influx_integral, "i_inf/influx");
  Eigen::VectorXd res(i_inf.size());
  for (Eigen::Index v = 0; v < i_inf.size(); ++v)
    res[v] = s0[v] * std::exp(-tau[v] * i_inf[v]) + eta[v] * i_inf[v] -
             i0[v] - s0[v] - influx_integral[v] + lambda_bar[v] * i_inf[v];
  return res;
}

}  // namespace sirgraph
