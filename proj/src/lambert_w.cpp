#include "sirgraph/lambert_w.hpp"

#include <cmath>
#include <limits>

namespace sirgraph {

namespace {

constexpr double kInvE = 0.36787944117144232160;  // 1/e

// Series about the branch point x = -1/e in p = sqrt(2(1 + e x)),
// valid on both branches (p >= 0 for W_0, p <= 0 for W_-1).
double branch_point_series(double p) {
  // W = -1 + p - p^2/3 + 11 p^3/72 - 43 p^4/540 + ...
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

// Halley iteration on f(w) = w e^w - x; used near w = 0 and near the
// branch point where the logarithmic form is singular. Near w = -1 the
// derivative vanishes; the branch-point series guess is already accurate
// there and the residual is quadratically suppressed, so we stop rather
// than divide by a vanishing denominator.
double halley_direct(double x, double w) {
  for (int it = 0; it < 60; ++it) {
    if (std::abs(w + 1.0) < 1e-10) break;
    double ew = std::exp(w);
    double f = w * ew - x;
    double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    double dw = f / denom;
    if (!std::isfinite(dw)) break;
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Halley on the overflow-safe form g(w) = w + log(s w) - log(s x) with
// s = sign(w); requires the root away from w = 0 and w = -1.
double halley_log(double x, double w, bool negative) {
  const double lx = std::log(negative ? -x : x);
  for (int it = 0; it < 100; ++it) {
    double f = w + std::log(negative ? -w : w) - lx;
    double fp = 1.0 + 1.0 / w;
    double dw = f / (fp + f / (2.0 * fp * w * w));
    w -= dw;
    if (negative && w > -1.0) w = -1.0 - 1e-12;  // stay on the lower branch
    if (!negative && w <= 0.0) w = 1e-300;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace

double lambert_w(WBranch branch, double x) {
  if (!std::isfinite(x)) throw domain_error("lambert_w: non-finite argument");
  if (x < -kInvE) {
    // Absorb rounding of discriminants that graze the branch point.
    if (x >= -kInvE - 1e-14)
      x = -kInvE;
    else
      throw domain_error("OutOfDomain: lambert_w argument below -1/e");
  }
  if (branch == WBranch::Lower && x >= 0.0)
    throw domain_error("OutOfDomain: W_-1 requires a negative argument");

  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;

  if (branch == WBranch::Principal) {
    if (x < -0.25) {
      double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
      return halley_direct(x, branch_point_series(p));
    }
    if (x < 0.3) {
      // Maclaurin guess: x - x^2 + 3/2 x^3 - 8/3 x^4
      double w = x * (1.0 + x * (-1.0 + x * (1.5 - x * (8.0 / 3.0))));
      return halley_direct(x, w);
    }
    // The root is >= W(0.3) ~ 0.24, safely inside the log form's domain.
    double w;
    if (x > std::exp(1.0)) {
      double l1 = std::log(x), l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    } else {
      w = std::log1p(x);
    }
    return halley_log(x, w, /*negative=*/false);
  }

  if (x < -0.25) {
    double p = -std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    return halley_direct(x, branch_point_series(p));
  }
  // Root <= W_-1(-0.25) ~ -2.15: the log form is regular there.
  double l1 = std::log(-x), l2 = std::log(-l1);
  return halley_log(x, l1 - l2 + l2 / l1, /*negative=*/true);
}

}  // namespace sirgraph
