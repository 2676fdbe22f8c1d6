#pragma once

#include <optional>
#include <vector>

#include "macksolve/baseflow.hpp"
#include "macksolve/common.hpp"

namespace macksolve {

struct ThermoJet {
  double t0 = 1.0, dt0 = 0.0, d2t0 = 0.0, d3t0 = 0.0;
};

// Local Mach number M(U_B - c)/sqrt(T_0) and its Y-derivatives.
struct MachJet {
  cd m, dm, d2m, d3m;
  // F = 1 - m^2 and derivatives.
  cd f() const { return 1.0 - m * m; }
  cd df() const { return -2.0 * m * dm; }
  cd d2f() const { return -2.0 * (dm * dm + m * d2m); }
  cd d3f() const { return -2.0 * (3.0 * dm * d2m + m * d3m); }
};

// Mean temperature and density from the Crocco-Busemann relation for a
// given base flow and free-stream Mach number.
class MeanFlow {
 public:
  MeanFlow(const BaseFlow& flow, double mach, double gamma = kGamma);

  const BaseFlow& flow() const { return *flow_; }
  double mach() const { return mach_; }
  double gamma() const { return gamma_; }
  double y_max() const { return flow_->y_max(); }

  ThermoJet thermo(double y) const;
  double t0(double y) const { return thermo(y).t0; }
  double rho0(double y) const { return 1.0 / t0(y); }
  MachJet mbar(double y, cd c) const;
  cd F(double y, cd c) const { return mbar(y, c).f(); }

  // F = F_r + F_i with F_r the c_i = 0 part.
  double Fr(double y, double cr) const;
  cd Fi(double y, cd c) const;

  // Node tables on the flow grid.
  std::vector<double> t0_table() const;
  std::vector<double> rho0_table() const;

 private:
  const BaseFlow* flow_;
  double mach_, gamma_;
};

struct TurningData {
  double cr = 0.0;
  double delta = 0.0;  // discriminant of the quadratic for U_B(Y_0)
  double u0 = 0.0;     // U_B(Y_0)
  double y0 = 0.0;
  std::optional<double> yc;  // absent when c_r lies above the profile
  double dfr0 = 0.0;         // dF_r/dY at Y_0
};

// Mode window of admissible phase speeds, (1 - 1/M, 1).
bool in_mode_window(double cr, double mach);

// Turning point only, valid for c_r in [sqrt(T_0(0))/M, 1 + 1/M).
TurningData turning_point_y0(const MeanFlow& mean, double cr);
// Turning point and critical point; c_r must lie in the mode window.
TurningData turning_point(const MeanFlow& mean, double cr);

// Y where U_B(Y) = target, by bisection and Newton on the profile.
double invert_profile(const BaseFlow& flow, double target);

// w_c(Y) = int_{Y_c}^{Y} F_r^{1/2}, for Y > Y_0.
double wc_weight(const MeanFlow& mean, const TurningData& td, double y);
// w(Y_0) = int_0^{Y_0} (-F_r)^{1/2}.
double supersonic_weight(const MeanFlow& mean, const TurningData& td);
// w_0(Y) = int_{Y_0}^{Y} F_r^{1/2} (real part of the regularised version).
double subsonic_weight(const MeanFlow& mean, const TurningData& td, double y);

// Window [Y1*, Y2*] around the critical point used by the Rayleigh analysis.
struct CriticalWindow {
  double y1s = 0.0, y2s = 0.0;
  double delta0 = 0.0;  // width of the smooth cutoff bands
};

double default_delta0(const TurningData& td);
// Y1* = Y0 + (Yc-Y0)/3, Y2* = Yc + 1.5 (Yc - Y1*), with Y2* nudged by 5% steps
// until |w_c(Y1*)| and |w_c(Y2*)| differ by at least 1e-2.
CriticalWindow default_window(const MeanFlow& mean, const TurningData& td);

}  // namespace macksolve
