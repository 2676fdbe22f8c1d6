#pragma once

#include <array>
#include <vector>

#include "macksolve/common.hpp"
#include "macksolve/thermo.hpp"

namespace macksolve {

// C-infinity step: 1 for t <= 0, 0 for t >= 1; value and three t-derivatives.
std::array<double, 4> smooth_step(double t);

struct LangerOptions {
  double delta0 = 0.0;
  // End of the critical window; the regularising cutoff chi_0 switches off over
  // [y2s + delta0, y2s + 2 delta0]. Ignored when c_i = 0.
  double y2s = 0.0;
  // Half-width of the local model around Y_0 as a fraction of the grid span.
  double local_fraction = 1e-2;
};

struct EtaJet {
  cd eta, d1, d2, d3;
};

// Langer variable eta(Y) for the regularised coefficient F~ = F_r + (1 - chi_0) F_i,
// with F~'(Y_0) eta eta'^2 = F~.
class LangerMap {
 public:
  LangerMap(const MeanFlow& mean, const TurningData& td, cd c, double alpha, LangerOptions opt);

  const MeanFlow& mean() const { return *mean_; }
  const TurningData& turning() const { return td_; }
  cd c() const { return c_; }
  double alpha() const { return alpha_; }
  const LangerOptions& options() const { return opt_; }
  double dfr0() const { return dfr0_; }
  // kappa^3 = alpha^2 F_r'(Y_0).
  double kappa() const { return kappa_; }
  // Same map at another wave number (eta does not depend on alpha).
  LangerMap with_alpha(double alpha) const;

  // chi_0 and its first three derivatives.
  std::array<double, 4> chi0(double y) const;
  // F~ and derivatives up to the third.
  std::array<cd, 4> ftilde(double y) const;

  // int_{Y0}^{Y} (F~/F~'(Y0))^{1/2} for Y >= Y0, int_Y^{Y0} (-F~/F~'(Y0))^{1/2} for Y < Y0.
  cd phi(double y) const;
  cd eta(double y) const;
  EtaJet jet(double y) const;

  // w_0(Y) = Re int_{Y0}^{Y} F~^{1/2} for Y >= Y0 and 0 below.
  double w0(double y) const;
  // zeta(Y) = alpha int_{Y0}^{Y} F~^{1/2} = (2/3) (kappa eta)^{3/2} for Y >= Y0.
  cd zeta(double y) const;
  // w(Y_0) = int_0^{Y0} (-F_r)^{1/2}, read from eta(0).
  double supersonic_weight() const;

  // Guard band half-width around Y_c where Q_1 is refused.
  double guard() const;
  cd q1(double y) const;
  // Q_1 from an already evaluated jet of eta and Mbar at y.
  cd q1(double y, const EtaJet& e, const MachJet& m) const;
  cd q2(double y) const;

  // Half-width of the local model and the nodes used by it.
  double local_halfwidth() const { return h_local_; }

 private:
  cd integrand(double y) const;  // (F~/F~'(Y0))^{1/2}, sign-adjusted below Y0
  cd local_phi(double y) const;  // substitution quadrature from Y0
  EtaJet identity_jet(double y) const;

  const MeanFlow* mean_;
  TurningData td_;
  cd c_;
  double alpha_;
  LangerOptions opt_;
  bool regularise_;
  double dfr0_, kappa_;
  double h_local_;
  // Cumulative tables beyond the local window.
  double step_;
  std::vector<double> up_nodes_, down_nodes_;
  std::vector<cd> up_phi_, down_phi_;
  // Chebyshev model of eta on [cheb_a_, cheb_b_].
  double cheb_a_, cheb_b_;
  std::vector<double> cheb_, cheb1_, cheb2_, cheb3_;
};

// Q~_1 (c_i = 0) on the supersonic side Y <= Y_0 for a real phase speed.
double q1_tilde(const LangerMap& real_map, double y);

}  // namespace macksolve
