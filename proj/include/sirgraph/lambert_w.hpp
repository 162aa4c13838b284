#pragma once

#include "sirgraph/errors.hpp"

namespace sirgraph {

enum class WBranch { Principal, Lower };  // W_0 on [-1/e, inf), W_-1 on [-1/e, 0)

// Real-branch Lambert W: solves w * exp(w) = x.
// Residual |w e^w - x| <= 1e-12 * max(1, |x|). Inputs within 1e-14 below
// -1/e are clamped to the branch point; anything further out throws.
double lambert_w(WBranch branch, double x);

inline double lambert_w0(double x) { return lambert_w(WBranch::Principal, x); }
inline double lambert_wm1(double x) { return lambert_w(WBranch::Lower, x); }

}  // namespace sirgraph
