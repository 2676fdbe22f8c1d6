#include "macksolve/dispersion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "macksolve/parallel.hpp"
#include "macksolve/quadrature.hpp"

namespace macksolve {

double j_domain_min(const MeanFlow& mean) { return std::sqrt(mean.t0(0.0)) / mean.mach(); }
double j_domain_max(const MeanFlow& mean) { return 1.0 + 1.0 / mean.mach(); }

JValue j_integral(const MeanFlow& mean, double cr) {
  TurningData td = turning_point_y0(mean, cr);
  if (td.y0 <= 0.0) return {};
  LangerMap map(mean, td, cd(cr, 0.0), 1.0, LangerOptions{});
  // Z = Y0 - u^2 turns the inverse square-root endpoint into a bounded integrand.
  auto g = [&](double u) -> cd {
    double z = td.y0 - u * u;
    double mf = -mean.Fr(z, cr);
    if (mf <= 0.0) return 0.0;
    return 2.0 * u * q1_tilde(map, z) / std::sqrt(mf);
  };
  double top = std::sqrt(td.y0);
  double coarse = integrate_adaptive(g, 0.0, top, 1e-8, 1e-14).value.real();
  double fine = integrate_adaptive(g, 0.0, top, 1e-10, 1e-14).value.real();
  JValue j{fine, std::abs(fine - coarse)};
  if (j.error > 1e-4 * std::abs(fine) && j.error > 1e-12)
    throw NumericalError("j_integral: refinement levels disagree");
  return j;
}

AdmissibleReport admissible_set_scan(const MeanFlow& mean, const std::vector<double>& crs,
                                     int threads) {
  AdmissibleReport rep;
  if (crs.empty()) return rep;
  for (std::size_t i = 1; i < crs.size(); ++i)
    if (!(crs[i] > crs[i - 1]) || crs[i] - crs[i - 1] > 1e-3 + 1e-12)
      throw DomainError("scan-j: c_r grid must increase with step <= 1e-3");
  rep.samples.resize(crs.size());
  parallel_for(crs.size(), threads, [&](std::size_t i) {
    JSample& s = rep.samples[i];
    s.cr = crs[i];
    s.in_domain = crs[i] >= j_domain_min(mean) && crs[i] < j_domain_max(mean);
    if (s.in_domain) s.j = j_integral(mean, crs[i]).value;
  });
  double jmax = 0.0;
  for (const auto& s : rep.samples) jmax = std::max(jmax, std::abs(s.j));
  rep.noise_floor = 1e-6 * jmax;
  double m = mean.mach();
  for (auto& s : rep.samples)
    s.admissible = s.in_domain && std::abs(s.j) > rep.noise_floor && in_mode_window(s.cr, m) && jmax > 0.0;

  auto root = [&](double a, double b, double ja) {
    while (b - a > 1e-6) {
      double mid = 0.5 * (a + b);
      double jm = j_integral(mean, mid).value;
      if ((jm < 0) == (ja < 0)) {
        a = mid;
        ja = jm;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };
  const auto& S = rep.samples;
  std::size_t i = 0;
  while (i < S.size()) {
    if (!S[i].admissible) {
      ++i;
      continue;
    }
    double lo = S[i].cr;
    if (i > 0 && S[i - 1].in_domain && S[i - 1].j * S[i].j < 0.0 && in_mode_window(S[i - 1].cr, m))
      lo = root(S[i - 1].cr, S[i].cr, S[i - 1].j);
    std::size_t k = i;
    while (k + 1 < S.size() && S[k + 1].admissible && S[k + 1].j * S[k].j > 0.0) ++k;
    double hi = S[k].cr;
    if (k + 1 < S.size() && S[k + 1].in_domain && S[k].j * S[k + 1].j < 0.0 && in_mode_window(S[k + 1].cr, m))
      hi = root(S[k].cr, S[k + 1].cr, S[k].j);
    rep.intervals.emplace_back(lo, hi);
    i = k + 1;
  }
  return rep;
}

namespace {

LangerOptions window_options(const CriticalWindow& w) {
  LangerOptions o;
  o.delta0 = w.delta0;
  o.y2s = w.y2s;
  return o;
}

}  // namespace

DispersionContext::DispersionContext(const MeanFlow& mean, double cr)
    : DispersionContext(mean, cr, default_window(mean, turning_point(mean, cr))) {}

DispersionContext::DispersionContext(const MeanFlow& mean, double cr, const CriticalWindow& window)
    : mean_(&mean),
      td_(turning_point(mean, cr)),
      win_(window),
      base_(mean, td_, cd(cr, 0.0), 1.0, window_options(window)) {
  if (!(window.y1s > td_.y0 + window.delta0 && window.y1s < *td_.yc && window.y2s > *td_.yc))
    throw DomainError("dispersion: critical window must satisfy Y0 + delta0 < Y1* < Yc < Y2*");
  w_y0_ = base_.supersonic_weight();
  if (!(w_y0_ > 0.0)) throw DomainError("dispersion: turning point at the wall");
}

double DispersionContext::alpha_min() const { return (2.0 / 3.0) * std::pow(2.0, 1.5) / w_y0_; }

double DispersionContext::alpha_cap() const { return std::log(1e12) / base_.w0(*td_.yc); }

double DispersionContext::chi(double y) const {
  if (y >= win_.y1s && y <= win_.y2s) return 1.0;
  double t = y < win_.y1s ? (win_.y1s - y) / win_.delta0 : (y - win_.y2s) / win_.delta0;
  return smooth_step(t)[0];
}

double DispersionContext::value(double alpha) const {
  LangerMap map = base_.with_alpha(alpha);
  OuterBasis basis(map);
  BasisSource f = [&](double y, const BasisPoint& p) -> cd {
    double x = chi(y);
    if (x == 1.0) return 0.0;
    return -(1.0 - x) * map.q1(y, p.jet, p.mach) * p.A();
  };
  OuterSolution s = solve_outer(basis, f, {0.0});
  BasisPoint p0 = basis.eval(0.0);
  cd d = p0.da * std::exp(-p0.log_scale) + s.cal_b[0] * p0.db;
  return d.real();
}

double DispersionContext::theta(double alpha) const {
  double k = std::cbrt(alpha * alpha * td_.dfr0);
  return airy_theta(-k * base_.eta(0.0).real());
}

std::vector<DispersionRoot> real_dispersion_roots(const DispersionContext& ctx, double alpha_lo,
                                                  double alpha_hi, int threads) {
  if (!(alpha_hi > alpha_lo) || !(alpha_lo > 0.0)) throw DomainError("dispersion: empty alpha range");
  double w = ctx.supersonic_weight();
  double step = kPi / w / 8.0;
  std::size_t n = static_cast<std::size_t>(std::ceil((alpha_hi - alpha_lo) / step));
  n = std::max<std::size_t>(n, 2);
  std::vector<double> as(n + 1), ds(n + 1);
  for (std::size_t j = 0; j <= n; ++j) as[j] = alpha_lo + (alpha_hi - alpha_lo) * j / n;
  parallel_for(n + 1, threads, [&](std::size_t j) { ds[j] = ctx.value(as[j]); });

  std::vector<std::size_t> brackets;
  for (std::size_t j = 0; j < n; ++j)
    if (ds[j] == 0.0 || (ds[j] < 0.0) != (ds[j + 1] < 0.0)) brackets.push_back(j);
  std::vector<DispersionRoot> roots(brackets.size());
  parallel_for(brackets.size(), threads, [&](std::size_t r) {
    std::size_t j = brackets[r];
    double a = as[j], b = as[j + 1], da = ds[j];
    double root = a;
    if (da != 0.0) {
      while (b - a > 1e-8) {
        double mid = 0.5 * (a + b);
        double dm = ctx.value(mid);
        if (dm == 0.0) {
          a = b = mid;
          break;
        }
        if ((dm < 0.0) == (da < 0.0)) {
          a = mid;
          da = dm;
        } else {
          b = mid;
        }
      }
      root = 0.5 * (a + b);
    }
    DispersionRoot& out = roots[r];
    out.alpha = root;
    out.theta = ctx.theta(root);
    out.cos_sign = std::cos(out.theta) >= 0.0 ? 1 : -1;
    double lo = j > 0 ? std::abs(ds[j - 1]) : 0.0;
    double hi = j + 2 <= n ? std::abs(ds[j + 2]) : 0.0;
    out.scale = std::max({std::abs(ds[j]), std::abs(ds[j + 1]), lo, hi});
    out.residual = std::abs(ctx.value(root));
    // Nearest pole of tan Theta, Theta = alpha w - pi/4 = pi/2 + k pi.
    double kpole = std::round((root * w - 0.75 * kPi) / kPi);
    double pole = (0.75 * kPi + kpole * kPi) / w;
    out.flagged = std::abs(root - pole) < 1e-6;
  });
  return roots;
}

std::vector<std::size_t> select_unstable_subsequence(const std::vector<DispersionRoot>& roots,
                                                     int sign_target) {
  if (sign_target != 1 && sign_target != -1) throw DomainError("sign target must be +1 or -1");
  if (roots.size() < 4) throw DomainError("selection needs at least 4 roots");
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (!roots[i].flagged && roots[i].cos_sign == sign_target) sel.push_back(i);
  if (sel.size() < 2) throw NumericalError("fewer than 2 roots carry the requested sign");
  return sel;
}

SpacingStats spacing_stats(const std::vector<double>& alphas, double w_y0) {
  SpacingStats s;
  if (alphas.size() < 2) return s;
  s.min = 1e300;
  s.max = -1e300;
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    double v = w_y0 * (alphas[i] - alphas[i - 1]);
    s.mean += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.count = alphas.size() - 1;
  s.mean /= static_cast<double>(s.count);
  return s;
}

GrowthFit growth_rate_fit(const std::vector<std::pair<double, double>>& alpha_ci) {
  if (alpha_ci.size() < 4) throw DomainError("growth fit needs at least 4 eigenvalues");
  int n = static_cast<int>(alpha_ci.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    auto [a, ci] = alpha_ci[i];
    if (!(a > 0.0) || !(ci > 0.0)) throw DomainError("growth fit needs alpha > 0 and c_i > 0");
    X(i, 0) = std::log(a);
    X(i, 1) = -a;
    X(i, 2) = 1.0;
    y(i) = std::log(ci);
  }
  Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
  GrowthFit g;
  g.p = beta(0);
  g.s = beta(1);
  g.b = beta(2);
  double mean = y.mean();
  double ss_tot = (y.array() - mean).square().sum();
  double ss_res = (y - X * beta).squaredNorm();
  g.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return g;
}

}  // namespace macksolve
