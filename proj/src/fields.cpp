#include "macksolve/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace macksolve {

FieldTables reconstruct_fields(const MeanFlow& mean, double alpha, cd c, const std::vector<double>& y,
                               const std::vector<cd>& p, const std::vector<cd>& dp) {
  if (y.size() != p.size() || y.size() != dp.size()) throw DomainError("fields: table sizes differ");
  if (!(c.imag() > 0.0)) throw DomainError("fields: needs c_i > 0");
  const double g = mean.gamma(), m2 = mean.mach() * mean.mach();
  FieldTables f;
  f.y = y;
  f.p = p;
  std::size_t n = y.size();
  f.rho.resize(n);
  f.u.resize(n);
  f.v.resize(n);
  f.t.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    ProfileJet uj = mean.flow().eval(y[k]);
    ThermoJet th = mean.thermo(y[k]);
    cd w = uj.u - c;
    f.v[k] = cd(0.0, 1.0) * th.t0 * dp[k] / (g * m2 * alpha * w);
    f.u[k] = -th.t0 * p[k] / (g * m2 * w) - th.t0 * dp[k] * uj.du / (g * m2 * alpha * alpha * w * w);
    // P'' eliminated with the pressure equation.
    f.rho[k] = p[k] / (g * th.t0) + th.dt0 * dp[k] / (g * m2 * alpha * alpha * th.t0 * w * w);
    f.t[k] = p[k] * th.t0 - f.rho[k] * th.t0 * th.t0;
  }
  return f;
}

namespace {

// Fourth-order first derivative on a uniform grid; one-sided near the ends.
std::vector<cd> diff4(const std::vector<cd>& v, double h) {
  std::size_t n = v.size();
  std::vector<cd> d(n);
  if (n < 6) throw DomainError("residual_check: grid too short");
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
  d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
  d[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) / (12.0 * h);
  d[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / (12.0 * h);
  return d;
}

}  // namespace

Residuals residual_check(const FieldTables& f, const MeanFlow& mean, double alpha, cd c) {
  std::size_t n = f.y.size();
  Residuals r;
  if (n < 6) throw DomainError("residual_check: grid too short");
  double h = (f.y.back() - f.y.front()) / static_cast<double>(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    if (std::abs(f.y[k] - f.y[k - 1] - h) > 1e-9 * std::max(1.0, h)) throw DomainError("residual_check: grid must be uniform");
  r.guard = 10.0 * std::max(c.imag(), h);
  std::optional<double> yc;
  if (c.real() > mean.flow().u.front() && c.real() < mean.flow().u.back())
    yc = invert_profile(mean.flow(), c.real());

  const double g = mean.gamma(), m2 = mean.mach() * mean.mach();
  const cd ia(0.0, alpha);
  std::vector<cd> vr(n);
  for (std::size_t k = 0; k < n; ++k) vr[k] = f.v[k] * mean.rho0(f.y[k]);
  std::vector<cd> dvr = diff4(vr, h), dp = diff4(f.p, h);

  double res[5] = {0, 0, 0, 0, 0}, scale[5] = {0, 0, 0, 0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    if (yc && std::abs(f.y[k] - *yc) <= r.guard) continue;
    ProfileJet uj = mean.flow().eval(f.y[k]);
    ThermoJet th = mean.thermo(f.y[k]);
    double r0 = 1.0 / th.t0;
    cd w = uj.u - c;
    cd t1[3] = {ia * w * f.rho[k], ia * r0 * f.u[k], dvr[k]};
    cd t2[3] = {ia * w * f.u[k] * r0, r0 * f.v[k] * uj.du, ia * f.p[k] / (g * m2)};
    cd t3[2] = {ia * w * f.v[k] * r0, dp[k] / (g * m2)};
    cd t4[3] = {ia * w * r0 * f.t[k], r0 * f.v[k] * th.dt0, -(g - 1.0) / g * ia * w * f.p[k]};
    cd t5[3] = {f.p[k], -f.rho[k] * th.t0, -f.t[k] * r0};
    auto acc = [&](int e, const cd* t, int m) {
      cd sum = 0.0;
      double big = 0.0;
      for (int i = 0; i < m; ++i) {
        sum += t[i];
        big = std::max(big, std::abs(t[i]));
      }
      res[e] = std::max(res[e], std::abs(sum));
      scale[e] = std::max(scale[e], big);
    };
    acc(0, t1, 3);
    acc(1, t2, 3);
    acc(2, t3, 2);
    acc(3, t4, 3);
    acc(4, t5, 3);
  }
  auto rel = [&](int e) { return scale[e] > 0.0 ? res[e] / scale[e] : 0.0; };
  r.continuity = rel(0);
  r.momentum_x = rel(1);
  r.momentum_y = rel(2);
  r.energy = rel(3);
  r.state = rel(4);
  return r;
}

}  // namespace macksolve
