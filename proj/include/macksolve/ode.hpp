#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "macksolve/common.hpp"

namespace macksolve {

// Embedded Dormand-Prince 5(4) pair for complex systems of fixed size,
// integrating along the real axis in either direction.
template <std::size_t N>
class DoPri {
 public:
  using State = std::array<cd, N>;
  using Rhs = std::function<void(double, const State&, State&)>;
  // Upper bound on |h| as a function of position (e.g. to resolve a layer).
  using StepCap = std::function<double(double)>;
  // Called after every accepted step; may rescale y in place.
  using Observer = std::function<void(double, State&)>;

  double rtol = 1e-10;
  double atol = 1e-14;
  int max_steps = 2000000;

  DoPri(Rhs rhs) : rhs_(std::move(rhs)) {}

  // Integrates y from x0 to x1 and returns the number of accepted steps.
  int integrate(double x0, double x1, State& y, const StepCap& cap = nullptr,
                const Observer& obs = nullptr, double h0 = 0.0) {
    const double dir = x1 >= x0 ? 1.0 : -1.0;
    double x = x0;
    double span = std::abs(x1 - x0);
    if (span == 0.0) return 0;
    double h = h0 > 0.0 ? h0 : span * 1e-3;
    int accepted = 0;
    State k1, k2, k3, k4, k5, k6, k7, tmp, y5;
    rhs_(x, y, k1);
    for (int it = 0; it < max_steps; ++it) {
      double remaining = std::abs(x1 - x);
      if (remaining <= 1e-15 * std::max(1.0, std::abs(x1))) return accepted;
      if (cap) h = std::min(h, cap(x));
      bool last = false;
      if (h >= remaining) {
        h = remaining;
        last = true;
      }
      double s = dir * h;
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + s * (a21 * k1[i]);
      rhs_(x + c2 * s, tmp, k2);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + s * (a31 * k1[i] + a32 * k2[i]);
      rhs_(x + c3 * s, tmp, k3);
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + s * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs_(x + c4 * s, tmp, k4);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + s * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs_(x + c5 * s, tmp, k5);
      for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + s * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      rhs_(x + s, tmp, k6);
      for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] + s * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      rhs_(x + s, y5, k7);
      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        cd e = s * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        double r = std::abs(e) / sc;
        err = std::max(err, r);
      }
      if (!std::isfinite(err)) {
        h *= 0.1;
        if (h < 1e-15 * std::max(1.0, std::abs(x))) throw NumericalError("ode: non-finite state");
        continue;
      }
      if (err <= 1.0) {
        x = last ? x1 : x + s;
        y = y5;
        k1 = k7;
        ++accepted;
        if (obs) {
          State before = y;
          obs(x, y);
          if (y != before) rhs_(x, y, k1);
        }
        if (last) return accepted;
        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::min(5.0, std::max(0.2, fac));
      } else {
        h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
        if (h < 1e-15 * std::max(1.0, std::abs(x))) throw NumericalError("ode: step size underflow");
      }
    }
    throw NumericalError("ode: step limit exceeded");
  }

 private:
  Rhs rhs_;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

}  // namespace macksolve
