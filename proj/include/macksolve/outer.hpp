#pragma once

#include <functional>
#include <vector>

#include "macksolve/airy.hpp"
#include "macksolve/langer.hpp"

namespace macksolve {

// A = E Ai(kappa eta), B = E Bi(kappa eta), E = Mbar / sqrt(eta'). Values are stored
// scaled: A = a * exp(-log_scale), B = b * exp(log_scale), derivatives likewise.
struct BasisPoint {
  double y = 0.0;
  EtaJet jet;
  MachJet mach;
  cd a, da, b, db;
  cd e, de;
  cd mbar;
  double log_scale = 0.0;
  cd A() const { return a * std::exp(-log_scale); }
  cd B() const { return b * std::exp(log_scale); }
};

class OuterBasis {
 public:
  explicit OuterBasis(const LangerMap& langer) : langer_(&langer) {}
  const LangerMap& langer() const { return *langer_; }
  BasisPoint eval(double y) const;
  // A'B - AB' = -kappa Mbar^2 / pi.
  cd expected_wronskian(double y) const;

 private:
  const LangerMap* langer_;
};

struct OuterSolution {
  std::vector<double> y;
  std::vector<cd> p, dp;
  // Coefficients of A and B, scaled so that P = cal_a * a + cal_b * b.
  std::vector<cd> cal_a, cal_b;
  std::vector<double> log_scale;
  double truncation_error = 0.0;
};

// Variation-of-parameters solution of L_app[P] = f with P = calA A + calB B,
// calA(Y) = -pi/kappa int_0^Y B f Mbar^-2, calB(Y) = -pi/kappa int_Y^inf A f Mbar^-2.
// The upper limit is truncated at y_tail (default: end of the profile grid).
// The source must vanish inside the critical window.
OuterSolution solve_outer(const OuterBasis& basis, const std::function<cd(double)>& f,
                          std::vector<double> ys, double rel_tol = 1e-10, double y_tail = -1.0);
// Same, for sources built from the basis itself (e.g. -(1 - chi) Q_1 A); the
// basis point at y is passed in to avoid recomputing it.
using BasisSource = std::function<cd(double, const BasisPoint&)>;
OuterSolution solve_outer(const OuterBasis& basis, const BasisSource& f, std::vector<double> ys,
                          double rel_tol = 1e-10, double y_tail = -1.0);

}  // namespace macksolve
