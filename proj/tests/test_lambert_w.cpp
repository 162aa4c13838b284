#include <doctest.h>

#include <cmath>
#include <random>

#include "sirgraph/lambert_w.hpp"

using namespace sirgraph;

namespace {

// Independent oracle: bisection on f(w) = w e^w - x over the branch range.
double bisect_w(WBranch branch, double x) {
  double lo, hi;
  if (branch == WBranch::Principal) {
    lo = -1.0;
    hi = 1.0;
    while (hi * std::exp(hi) < x) hi *= 2.0;
  } else {
    hi = -1.0;
    lo = -2.0;
    while (lo * std::exp(lo) < x) lo *= 2.0;  // f decreasing on (-inf,-1)
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = mid * std::exp(mid) - x;
    bool go_up = (branch == WBranch::Principal) ? (f < 0.0) : (f > 0.0);
    (go_up ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr double kInvE = 0.36787944117144233;

}  // namespace

TEST_CASE("special values") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // Omega constant: W0(1)
  CHECK(lambert_w0(1.0) ==
        doctest::Approx(0.56714329040978387).epsilon(1e-14));
  CHECK(lambert_wm1(-std::exp(-1.0)) == doctest::Approx(-1.0));
  CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0));
  CHECK(lambert_wm1(-2.0 * std::exp(-2.0)) ==
        doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("domain handling") {
  CHECK_THROWS_AS(lambert_w0(-kInvE - 1e-8), Error);
  CHECK_THROWS_AS(lambert_wm1(-kInvE - 1e-8), Error);
  CHECK_THROWS_AS(lambert_wm1(0.0), Error);
  CHECK_THROWS_AS(lambert_wm1(1.0), Error);
  // inputs a hair below the branch point are clamped
  CHECK(lambert_w0(-kInvE - 1e-15) == doctest::Approx(-1.0));
  CHECK(lambert_wm1(-kInvE - 1e-15) == doctest::Approx(-1.0));
}

TEST_CASE("round trips against the defining equation") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> w0_range(-1.0, 30.0);
  std::uniform_real_distribution<double> wm1_range(-40.0, -1.0);
  for (int i = 0; i < 100000; ++i) {
    double w = w0_range(rng);
    double x = w * std::exp(w);
    double got = lambert_w0(x);
    CHECK(std::abs(got - w) <= 1e-12 * std::max(1.0, std::abs(w)));
  }
  for (int i = 0; i < 100000; ++i) {
    double w = wm1_range(rng);
    double x = w * std::exp(w);
    double got = lambert_wm1(x);
    CHECK(std::abs(got - w) <= 1e-12 * std::max(1.0, std::abs(w)));
  }
}

TEST_CASE("agreement with bisection oracle") {
  for (double x : {-0.35, -0.2, -0.05, -1e-4, 1e-4, 0.5, 3.0, 100.0}) {
    double w = lambert_w0(x);
    CHECK(w == doctest::Approx(bisect_w(WBranch::Principal, x))
                   .epsilon(1e-12));
  }
  for (double x : {-0.36, -0.25, -0.1, -1e-3, -1e-8}) {
    double w = lambert_wm1(x);
    CHECK(w ==
          doctest::Approx(bisect_w(WBranch::Lower, x)).epsilon(1e-12));
  }
}

TEST_CASE("behavior near the branch point") {
  // W0 >= -1 >= W-1, both converging to -1 at -1/e
  for (double eps : {1e-6, 1e-9, 1e-12}) {
    double x = -kInvE + eps;
    double w0 = lambert_w0(x);
    double wm1 = lambert_wm1(x);
    CHECK(w0 >= -1.0);
    CHECK(wm1 <= -1.0);
    CHECK(w0 * std::exp(w0) == doctest::Approx(x).epsilon(1e-10));
    CHECK(wm1 * std::exp(wm1) == doctest::Approx(x).epsilon(1e-10));
  }
}
