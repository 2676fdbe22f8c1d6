#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "macksolve/baseflow.hpp"
#include "macksolve/thermo.hpp"

namespace testing {

using macksolve::cd;

// Blasius on [0, 20] with 2000 intervals, shared by every test.
inline const macksolve::BaseFlow& blasius_flow() {
  static const macksolve::BaseFlow f = macksolve::blasius(20.0, 2000);
  return f;
}

inline const macksolve::MeanFlow& mach3() {
  static const macksolve::MeanFlow m(blasius_flow(), 3.0);
  return m;
}

inline double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Five-point second derivative of a sampled function.
inline cd d2_5pt(const std::function<cd(double)>& f, double y, double h) {
  return (-f(y - 2 * h) + 16.0 * f(y - h) - 30.0 * f(y) + 16.0 * f(y + h) - f(y + 2 * h)) / (12 * h * h);
}

inline cd d1_5pt(const std::function<cd(double)>& f, double y, double h) {
  return (f(y - 2 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2 * h)) / (12 * h);
}

// Smooth bump supported on (a, b).
inline double bump(double y, double a, double b) {
  if (y <= a || y >= b) return 0.0;
  double t = (y - a) / (b - a);
  return std::exp(1.0 - 1.0 / (4.0 * t * (1.0 - t)));
}

}  // namespace testing
