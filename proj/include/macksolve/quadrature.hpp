#pragma once

#include <functional>
#include <vector>

#include "macksolve/common.hpp"

namespace macksolve {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule with n nodes (cached per n).
const GaussRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre on [a, b].
cd integrate_gl(const std::function<cd(double)>& f, double a, double b, int n = 20);

struct QuadResult {
  cd value;
  double error = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7/15) bisection. Converges when the summed error
// estimate is below max(abs_tol, rel_tol * |value|). Panels whose estimate is
// at the rounding level are not split further. Throws NumericalError when
// max_depth or the evaluation budget is exhausted.
QuadResult integrate_adaptive(const std::function<cd(double)>& f, double a, double b,
                              double rel_tol = 1e-10, double abs_tol = 1e-300,
                              int max_depth = 40);

}  // namespace macksolve
