#pragma once

#include <cmath>

namespace sirgraph {

// Time-varying coefficient shapes used by the lockdown scenarios.
//   Constant:        value(t) = base
//   LockdownSigmoid: base for t <= t_lock, then
//                    (base e^{-mu s} + locked) / (1 + e^{-mu s}), s = t - t_lock
//                    (discontinuous at t_lock: the right value is the average)
//   LockdownDecay:   base for t <= t_lock, then base e^{-mu s}
struct Schedule {
  enum class Kind { Constant, LockdownSigmoid, LockdownDecay };

  Kind kind = Kind::Constant;
  double base = 0.0;
  double locked = 0.0;
  double t_lock = 0.0;
  double mu = 0.0;

  static Schedule constant(double value) { return {Kind::Constant, value}; }

  double at(double t) const {
    switch (kind) {
      case Kind::Constant:
        return base;
      case Kind::LockdownSigmoid: {
        if (t <= t_lock) return base;
        double w = std::exp(-mu * (t - t_lock));
        return (base * w + locked) / (1.0 + w);
      }
      case Kind::LockdownDecay: {
        if (t <= t_lock) return base;
        return base * std::exp(-mu * (t - t_lock));
      }
    }
    return base;
  }
};

}  // namespace sirgraph
