#include "macksolve/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "macksolve/quadrature.hpp"

namespace macksolve {

MeanFlow::MeanFlow(const BaseFlow& flow, double mach, double gamma)
    : flow_(&flow), mach_(mach), gamma_(gamma) {
  if (!(mach > 1.0)) throw DomainError("Mach number must exceed 1");
  if (!(gamma > 1.0)) throw DomainError("gamma must exceed 1");
}

ThermoJet MeanFlow::thermo(double y) const {
  ProfileJet p = flow_->eval(y);
  double k = 0.5 * (gamma_ - 1.0) * mach_ * mach_;
  ThermoJet t;
  t.t0 = 1.0 + k * (1.0 - p.u * p.u);
  t.dt0 = -2.0 * k * p.u * p.du;
  t.d2t0 = -2.0 * k * (p.du * p.du + p.u * p.d2u);
  t.d3t0 = -2.0 * k * (3.0 * p.du * p.d2u + p.u * p.d3u);
  return t;
}

MachJet MeanFlow::mbar(double y, cd c) const {
  ProfileJet p = flow_->eval(y);
  ThermoJet t = thermo(y);
  // s = T0^{-1/2} and derivatives.
  double r = 1.0 / t.t0;
  double s = std::sqrt(r);
  double s1 = -0.5 * s * r * t.dt0;
  double s2 = 0.75 * s * r * r * t.dt0 * t.dt0 - 0.5 * s * r * t.d2t0;
  double s3 = -1.875 * s * r * r * r * t.dt0 * t.dt0 * t.dt0 + 2.25 * s * r * r * t.dt0 * t.d2t0 -
              0.5 * s * r * t.d3t0;
  cd w = p.u - c;
  MachJet m;
  m.m = mach_ * w * s;
  m.dm = mach_ * (p.du * s + w * s1);
  m.d2m = mach_ * (p.d2u * s + 2.0 * p.du * s1 + w * s2);
  m.d3m = mach_ * (p.d3u * s + 3.0 * p.d2u * s1 + 3.0 * p.du * s2 + w * s3);
  return m;
}

double MeanFlow::Fr(double y, double cr) const {
  ProfileJet p = flow_->eval(y);
  double w = p.u - cr;
  return 1.0 - mach_ * mach_ * w * w / thermo(y).t0;
}

cd MeanFlow::Fi(double y, cd c) const {
  ProfileJet p = flow_->eval(y);
  double ci = c.imag();
  double w = p.u - c.real();
  return mach_ * mach_ * cd(ci * ci, 2.0 * ci * w) / thermo(y).t0;
}

std::vector<double> MeanFlow::t0_table() const {
  std::vector<double> out;
  for (double y : flow_->grid) out.push_back(t0(y));
  return out;
}

std::vector<double> MeanFlow::rho0_table() const {
  std::vector<double> out;
  for (double y : flow_->grid) out.push_back(rho0(y));
  return out;
}

bool in_mode_window(double cr, double mach) { return cr > 1.0 - 1.0 / mach && cr < 1.0; }

double invert_profile(const BaseFlow& flow, double target) {
  const auto& u = flow.u;
  if (!(target >= u.front() && target < u.back()))
    throw DomainError("profile never reaches the requested velocity");
  auto it = std::upper_bound(u.begin(), u.end(), target);
  int j = std::max(0, static_cast<int>(it - u.begin()) - 1);
  j = std::min(j, flow.size() - 2);
  double lo = flow.grid[j], hi = flow.grid[j + 1];
  double y = lo + (hi - lo) * (target - u[j]) / (u[j + 1] - u[j]);
  for (int k = 0; k < 100; ++k) {
    ProfileJet p = flow.eval(y);
    double g = p.u - target;
    if (g > 0)
      hi = y;
    else
      lo = y;
    double yn = p.du > 0 ? y - g / p.du : 0.5 * (lo + hi);
    if (!(yn > lo && yn < hi)) yn = 0.5 * (lo + hi);
    if (std::abs(yn - y) < 1e-15 * std::max(1.0, y)) return yn;
    y = yn;
  }
  return y;
}

TurningData turning_point_y0(const MeanFlow& mean, double cr) {
  double m = mean.mach(), g = mean.gamma();
  double lo = std::sqrt(mean.t0(0.0)) / m;
  if (!(cr >= lo - 1e-14 && cr < 1.0 + 1.0 / m))
    throw DomainError("c_r outside [sqrt(T0(0))/M, 1 + 1/M)");
  TurningData td;
  td.cr = cr;
  td.delta = (g * g - 1.0) + 2.0 * (g + 1.0) / (m * m) - 2.0 * (g - 1.0) * cr * cr;
  if (td.delta < 0.0) throw DomainError("negative discriminant for the turning point");
  td.u0 = (2.0 * cr - std::sqrt(td.delta)) / (g + 1.0);
  td.u0 = std::max(td.u0, 0.0);
  td.y0 = td.u0 <= 0.0 ? 0.0 : invert_profile(mean.flow(), td.u0);
  if (cr < mean.flow().u.back() && cr > 0.0) td.yc = invert_profile(mean.flow(), cr);
  td.dfr0 = mean.mbar(td.y0, cr).df().real();
  return td;
}

TurningData turning_point(const MeanFlow& mean, double cr) {
  if (!in_mode_window(cr, mean.mach())) throw DomainError("c_r outside the mode window (1 - 1/M, 1)");
  TurningData td = turning_point_y0(mean, cr);
  if (!td.yc) throw DomainError("profile never reaches c_r");
  return td;
}

double wc_weight(const MeanFlow& mean, const TurningData& td, double y) {
  auto f = [&](double z) -> cd { return std::sqrt(std::max(0.0, mean.Fr(z, td.cr))); };
  return integrate_adaptive(f, *td.yc, y, 1e-12, 1e-15).value.real();
}

double supersonic_weight(const MeanFlow& mean, const TurningData& td) {
  if (td.y0 <= 0.0) return 0.0;
  // Substitution Z = Y0 - u^2 removes the square-root endpoint behaviour.
  double top = std::sqrt(td.y0);
  auto f = [&](double u) -> cd {
    return 2.0 * u * std::sqrt(std::max(0.0, -mean.Fr(td.y0 - u * u, td.cr)));
  };
  return integrate_adaptive(f, 0.0, top, 1e-13, 1e-16).value.real();
}

double subsonic_weight(const MeanFlow& mean, const TurningData& td, double y) {
  if (y <= td.y0) return 0.0;
  double top = std::sqrt(y - td.y0);
  auto f = [&](double u) -> cd {
    return 2.0 * u * std::sqrt(std::max(0.0, mean.Fr(td.y0 + u * u, td.cr)));
  };
  return integrate_adaptive(f, 0.0, top, 1e-13, 1e-16).value.real();
}

double default_delta0(const TurningData& td) { return std::min(0.5, (*td.yc - td.y0) / 6.0); }

CriticalWindow default_window(const MeanFlow& mean, const TurningData& td) {
  if (!td.yc) throw DomainError("window needs a critical point");
  double yc = *td.yc;
  CriticalWindow w;
  w.delta0 = default_delta0(td);
  w.y1s = td.y0 + (yc - td.y0) / 3.0;
  double reach = 1.5 * (yc - w.y1s);
  double w1 = std::abs(wc_weight(mean, td, w.y1s));
  for (int k = 0; k < 40; ++k) {
    w.y2s = yc + reach;
    double w2 = std::abs(wc_weight(mean, td, w.y2s));
    if (std::abs(w1 - w2) >= 1e-2) break;
    reach *= 1.05;
  }
  if (w.y2s + 2.0 * w.delta0 >= mean.y_max())
    throw DomainError("critical window does not fit inside the profile grid");
  return w;
}

}  // namespace macksolve
