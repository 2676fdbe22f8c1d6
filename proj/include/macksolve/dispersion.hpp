#pragma once

#include <optional>
#include <vector>

#include "macksolve/langer.hpp"
#include "macksolve/outer.hpp"
#include "macksolve/thermo.hpp"

namespace macksolve {

// Admissibility integral J = int_0^{Y0} (-F~)^{-1/2} Q~_1 dZ.
struct JValue {
  double value = 0.0;
  double error = 0.0;  // disagreement between two refinement levels
};
// Lower end of the J domain, sqrt(T_0(0))/M.
double j_domain_min(const MeanFlow& mean);
double j_domain_max(const MeanFlow& mean);
JValue j_integral(const MeanFlow& mean, double cr);

struct JSample {
  double cr = 0.0, j = 0.0;
  bool in_domain = true;  // false where J is undefined; j is then 0
  bool admissible = false;
};
struct AdmissibleReport {
  std::vector<JSample> samples;
  std::vector<std::pair<double, double>> intervals;
  double noise_floor = 0.0;
};
// Scans J on the given grid (step <= 1e-3); intervals where |J| exceeds
// 1e-6 max|J|, intersected with (1 - 1/M, 1), with sign-change ends bisected to 1e-6.
// Points outside the J domain are reported as such rather than rejected.
AdmissibleReport admissible_set_scan(const MeanFlow& mean, const std::vector<double>& crs,
                                     int threads = 1);

// Leading-order boundary value dP_0/dY(0) = A'(0) + calB(0) B'(0) at real c = c_r, where
// calB comes from the outer quadrature with source -(1 - chi) Q_1 A and chi = 1 on the
// critical window (smooth transition over delta0 outside).
class DispersionContext {
 public:
  DispersionContext(const MeanFlow& mean, double cr);
  DispersionContext(const MeanFlow& mean, double cr, const CriticalWindow& window);

  const MeanFlow& mean() const { return *mean_; }
  const TurningData& turning() const { return td_; }
  const CriticalWindow& window() const { return win_; }
  double cr() const { return td_.cr; }
  // w(Y_0) = int_0^{Y0} (-F_r)^{1/2}.
  double supersonic_weight() const { return w_y0_; }
  double w0_at(double y) const { return base_.w0(y); }
  // Lower end where the Airy argument at the wall reaches -2.
  double alpha_min() const;
  // Wave number where exp(-alpha w_0(Y_c)) reaches 1e-12.
  double alpha_cap() const;

  double chi(double y) const;
  double value(double alpha) const;
  // Theta(-kappa eta(0)) = (2/3)(-kappa eta(0))^{3/2} - pi/4.
  double theta(double alpha) const;
  double quad_theta(double alpha) const { return alpha * w_y0_ - 0.25 * kPi; }
  LangerMap map(double alpha) const { return base_.with_alpha(alpha); }

 private:
  const MeanFlow* mean_;
  TurningData td_;
  CriticalWindow win_;
  LangerMap base_;
  double w_y0_;
};

struct DispersionRoot {
  double alpha = 0.0;
  double theta = 0.0;     // Theta(-kappa eta(0)) at the root
  int cos_sign = 0;       // sign of cos Theta
  bool flagged = false;   // within 1e-6 of a pole of tan Theta
  double residual = 0.0;  // |D| at the refined root
  double scale = 0.0;     // local scale of D
};

// Roots of D(alpha) on [alpha_lo, alpha_hi], isolated on a grid of step
// (pi / w(Y_0)) / 8 and refined by bisection to 1e-8.
std::vector<DispersionRoot> real_dispersion_roots(const DispersionContext& ctx, double alpha_lo,
                                                  double alpha_hi, int threads = 1);

// Indices of roots with sign(cos Theta) == sign_target.
std::vector<std::size_t> select_unstable_subsequence(const std::vector<DispersionRoot>& roots,
                                                     int sign_target);

struct SpacingStats {
  double mean = 0.0, min = 0.0, max = 0.0;
  std::size_t count = 0;
};
// Statistics of w(Y_0) * (alpha_{k+1} - alpha_k) over consecutive entries.
SpacingStats spacing_stats(const std::vector<double>& alphas, double w_y0);

struct GrowthFit {
  double s = 0.0;  // decay rate in log c_i = p log alpha - s alpha + b
  double p = 0.0;
  double b = 0.0;
  double r2 = 0.0;
};
GrowthFit growth_rate_fit(const std::vector<std::pair<double, double>>& alpha_ci);

}  // namespace macksolve
