#include "macksolve/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "macksolve/ode.hpp"

namespace macksolve {

cd ShootResult::ratio() const { return dp0 / p0; }

double default_shoot_start(const MeanFlow& mean, double alpha, double cr) {
  const double target = 46.0;
  double top = mean.y_max();
  TurningData td;
  try {
    td = turning_point_y0(mean, cr);
  } catch (const DomainError&) {
    return top;
  }
  if (alpha * subsonic_weight(mean, td, top) <= target) return top;
  double lo = td.y0, hi = top;
  for (int k = 0; k < 60 && hi - lo > 1e-6; ++k) {
    double mid = 0.5 * (lo + hi);
    (alpha * subsonic_weight(mean, td, mid) < target ? lo : hi) = mid;
  }
  return hi;
}

ShootResult shoot_pressure(const MeanFlow& mean, double alpha, cd c, const ShootOptions& opt, cd seed) {
  if (!(alpha > 0.0)) throw DomainError("shoot: alpha must be positive");
  if (!(c.imag() > 0.0)) throw DomainError("shoot: needs c_i > 0");
  if (c.imag() < kShootCiFloor)
    throw FloorError("growth rate below double-precision resolution at this alpha (c_i < 1e-13)");
  if (seed == 0.0) throw DomainError("shoot: zero far-field seed");

  ShootResult r;
  r.y_start = opt.y_start > 0.0 ? std::min(opt.y_start, mean.y_max())
                                : default_shoot_start(mean, alpha, c.real());
  std::optional<double> yc;
  if (c.real() > mean.flow().u.front() && c.real() < mean.flow().u.back())
    yc = invert_profile(mean.flow(), c.real());

  const double a2 = alpha * alpha;
  DoPri<2> ode([&](double y, const DoPri<2>::State& s, DoPri<2>::State& d) {
    MachJet m = mean.mbar(y, c);
    d[0] = s[1];
    d[1] = 2.0 * (m.dm / m.m) * s[1] + a2 * m.f() * s[0];
  });
  ode.rtol = opt.rtol;
  ode.atol = 1e-300;
  const double ci = c.imag();
  auto cap = [&](double y) {
    double d = yc ? std::abs(y - *yc) + ci : 1e300;
    return std::min(1.0 / alpha, d) / 10.0;
  };

  // Renormalise every 50 accepted steps by the largest |P| seen since the last one.
  double log_scale = 0.0, window_max = 0.0;
  int count = 0;
  auto obs = [&](double, DoPri<2>::State& s) {
    window_max = std::max(window_max, std::abs(s[0]));
    if (++count % 50 == 0 && window_max > 0.0) {
      s[0] /= window_max;
      s[1] /= window_max;
      log_scale += std::log(window_max);
      window_max = 0.0;
    }
  };

  DoPri<2>::State s{seed, -alpha * std::sqrt(mean.F(r.y_start, c)) * seed};
  int n = std::max(2, static_cast<int>(std::ceil(r.y_start / opt.h_out)));
  std::vector<double> ls(n + 1);
  r.y.resize(n + 1);
  r.p.resize(n + 1);
  r.dp.resize(n + 1);
  for (int k = 0; k <= n; ++k) r.y[k] = r.y_start * k / n;
  r.p[n] = s[0];
  r.dp[n] = s[1];
  ls[n] = 0.0;
  for (int k = n; k > 0; --k) {
    r.steps += ode.integrate(r.y[k], r.y[k - 1], s, cap, obs, r.y[k] - r.y[k - 1]);
    if (!std::isfinite(std::abs(s[0])) || !std::isfinite(std::abs(s[1])))
      throw NumericalError("shoot: overflow despite renormalisation");
    r.p[k - 1] = s[0];
    r.dp[k - 1] = s[1];
    ls[k - 1] = log_scale;
  }

  // Bring every node to the common scale of the largest |P|.
  double best = -1e300;
  int arg = 0;
  for (int k = 0; k <= n; ++k) {
    double l = std::abs(r.p[k]) > 0.0 ? std::log(std::abs(r.p[k])) + ls[k] : -1e300;
    if (l > best) {
      best = l;
      arg = k;
    }
  }
  cd phase = std::abs(r.p[arg]) > 0.0 ? r.p[arg] / std::abs(r.p[arg]) : 1.0;
  for (int k = 0; k <= n; ++k) {
    double f = std::exp(ls[k] - best);
    r.p[k] *= f / phase;
    r.dp[k] *= f / phase;
  }
  r.log_norm = best;
  r.p0 = r.p[0];
  r.dp0 = r.dp[0];
  return r;
}

double Residuals::max() const { return std::max({continuity, momentum_x, momentum_y, energy, state}); }

Mode find_eigenvalue(const MeanFlow& mean, double alpha, cd c_guess, const EigenOptions& opt) {
  if (!(c_guess.imag() > 0.0)) throw DomainError("eigen: seed needs c_i > 0");
  if (c_guess.imag() < kShootCiFloor)
    throw FloorError("growth rate below double-precision resolution at this alpha (c_i < 1e-13)");
  ShootOptions so = opt.shoot;
  if (so.y_start <= 0.0) so.y_start = default_shoot_start(mean, alpha, c_guess.real());

  auto shoot = [&](cd c) {
    try {
      return shoot_pressure(mean, alpha, c, so);
    } catch (const FloorError&) {
      throw;
    } catch (const NumericalError& e) {
      // The critical layer is thinner than the stepper can resolve.
      if (c.imag() < 1e-8) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", c.imag());
        throw FloorError(std::string("growth rate below double-precision resolution at this alpha (c_i = ") + buf +
                         ", " + e.what() + ")");
      }
      throw;
    }
  };
  auto fn = [&](cd c) { return shoot(c).ratio() / alpha; };
  auto residual = [](const ShootResult& s) {
    double m = 0.0;
    for (const cd& d : s.dp) m = std::max(m, std::abs(d));
    return std::abs(s.dp0) / std::max(1.0, m);
  };

  cd c = c_guess;
  ShootResult shot = shoot(c);
  cd d = shot.ratio() / alpha;
  for (int it = 1; it <= opt.max_iter; ++it) {
    double h = opt.fd_rel * std::abs(c);
    cd deriv = (fn(c + h) - d) / h;
    if (deriv == 0.0 || !std::isfinite(std::abs(deriv))) throw NumericalError("eigen: singular Newton derivative");
    cd step = -d / deriv;
    double lambda = 1.0;
    cd cn;
    ShootResult sn;
    cd dn;
    bool below_floor = false;
    for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
      cn = c + lambda * step;
      below_floor = cn.imag() < kShootCiFloor;
      if (below_floor) continue;
      sn = shoot(cn);
      dn = sn.ratio() / alpha;
      if (std::abs(dn) < std::abs(d)) break;
    }
    if (below_floor)
      throw FloorError("growth rate below double-precision resolution at this alpha (c_i < 1e-13)");
    double dc = std::abs(cn - c);
    c = cn;
    d = dn;
    shot = std::move(sn);
    if (residual(shot) <= opt.res_tol && dc <= opt.step_tol) {
      Mode m;
      m.alpha = alpha;
      m.c = c;
      m.iterations = it;
      m.boundary_residual = std::abs(shot.dp0);
      m.shot = std::move(shot);
      m.fields = reconstruct_fields(mean, alpha, c, m.shot.y, m.shot.p, m.shot.dp);
      m.residuals = residual_check(m.fields, mean, alpha, c);
      return m;
    }
  }
  throw NumericalError("eigen: Newton iteration did not converge in " + std::to_string(opt.max_iter) +
                       " iterations");
}

}  // namespace macksolve
