#pragma once

#include <array>
#include <functional>
#include <vector>

#include "macksolve/common.hpp"
#include "macksolve/thermo.hpp"

namespace macksolve {

inline constexpr double kRayleighCiFloor = 1e-13;

// Outward integration from Y_c of the homogeneous Rayleigh-type equation
//   Mbar ((phi'/F)' - alpha^2 phi) - (Mbar'/F)' phi = 0
// as phi' = F chi, chi' = (alpha^2 + Mbar''/(Mbar F) + 2 Mbar'^2/F^2) phi, carrying
// int_{Y_c} F/phi^2 along. Accepted nodes are kept, so any value is one short
// re-integration away.
class RayleighSweep {
 public:
  using State = std::array<cd, 3>;  // phi, chi, int_{Y_c} F/phi^2
  RayleighSweep(const MeanFlow& mean, double yc, cd c, double alpha, double y_lo, double y_hi);
  State at(double y) const;
  std::size_t node_count() const { return up_.size() + down_.size(); }

 private:
  void rhs(double y, const State& s, State& ds) const;
  double cap(double y) const;
  State run(double x0, double x1, State s) const;

  const MeanFlow* mean_;
  double yc_;
  cd c_;
  double alpha_;
  double lo_, hi_;
  std::vector<std::pair<double, State>> up_, down_;
};

// Gauss nodes of a mesh on the window, graded geometrically toward Y_c.
struct WindowMesh {
  std::vector<double> edges;       // includes Y_c
  std::vector<double> z, w;        // nodes and weights, kNodes per panel
  std::vector<cd> phi, f_over_phi2, mbar;
  static constexpr int kNodes = 16;
};

// Homogeneous solution with phi(Y_c) = Mbar(Y_c), phi'(Y_c) = Mbar'(Y_c) on the window.
class PhiSolution {
 public:
  PhiSolution(const MeanFlow& mean, const TurningData& td, const CriticalWindow& window, cd c,
              double alpha);

  const MeanFlow& mean() const { return *mean_; }
  const TurningData& turning() const { return td_; }
  const CriticalWindow& window() const { return win_; }
  cd c() const { return c_; }
  double alpha() const { return alpha_; }
  double yc() const { return *td_.yc; }
  const WindowMesh& mesh() const { return mesh_; }

  cd phi(double y) const;
  cd dphi(double y) const;
  // alpha^{-1} Mbar'(Y_c) F_r^{1/4} sinh(alpha w_c) + Mbar(Y_c) F_r^{1/4} cosh(alpha w_c).
  cd psi(double y) const;
  // int_a^b F/phi^2 as carried along by the integrator (independent of the mesh).
  cd carried_integral(double a, double b) const;

 private:
  const MeanFlow* mean_;
  TurningData td_;
  CriticalWindow win_;
  cd c_;
  double alpha_;
  cd m_c_, dm_c_;
  RayleighSweep sweep_;
  WindowMesh mesh_;
};

// int_{Y1*}^{Y2*} F/phi^2 on the graded mesh (ratio 1.2 toward Y_c).
cd phi_inverse_square_integral(const PhiSolution& phi);
// Leading imaginary part -pi Mbar_r''(Y_c) / Mbar_r'(Y_c)^3.
double inverse_square_imag_leading(const MeanFlow& mean, const TurningData& td);

// Solution of L_cr[varphi] = f with varphi(Y1*) = varphi(Y2*) = 0 through
//   varphi = phi int_{Y1*}^Y G_f + mu_f phi int_{Y1*}^Y F/phi^2,
//   G_f = F/phi^2 int_{Y_c}^Y phi f/Mbar,
// and the mirrored form from Y2* on Y >= Y_c.
class RayleighSolution {
 public:
  RayleighSolution(const PhiSolution& phi, std::function<cd(double)> f);
  cd value(double y) const;
  cd derivative(double y) const;
  cd mu() const { return mu_; }
  cd value_left(double y) const;
  cd value_right(double y) const;

 private:
  struct Partial {
    cd f1, g1;  // from Y1* to y
    cd f2, g2;  // from y to Y2*
    cd k, phi, dphi, fp2;
  };
  Partial partial(double y) const;

  const PhiSolution* phi_;
  std::function<cd(double)> f_;
  std::vector<cd> k_node_, g_node_;         // K and G_f at mesh nodes
  std::vector<cd> k_edge_;                  // K at mesh edges
  std::vector<cd> f1_, g1_, f2_, g2_;       // cumulative at edges
  cd mu_;
};

}  // namespace macksolve
