#include "macksolve/langer.hpp"

#include <algorithm>
#include <cmath>

#include "macksolve/quadrature.hpp"

namespace macksolve {

namespace {

constexpr int kChebNodes = 24;
constexpr int kPanelNodes = 16;
constexpr int kLocalNodes = 32;

// Chebyshev coefficients of f on [a, b] from values at the first-kind nodes.
std::vector<double> cheb_fit(const std::vector<double>& vals) {
  int n = static_cast<int>(vals.size());
  std::vector<double> c(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += vals[j] * std::cos(kPi * k * (j + 0.5) / n);
    c[k] = (k == 0 ? 1.0 : 2.0) * s / n;
  }
  return c;
}

std::vector<double> cheb_deriv(const std::vector<double>& c) {
  int n = static_cast<int>(c.size());
  std::vector<double> e(n + 2, 0.0);
  for (int k = n - 1; k >= 1; --k) e[k - 1] = e[k + 1] + 2.0 * k * c[k];
  std::vector<double> d(n, 0.0);
  for (int k = 0; k < n; ++k) d[k] = e[k];
  d[0] *= 0.5;
  return d;
}

double cheb_eval(const std::vector<double>& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

std::array<double, 4> smooth_step(double t) {
  if (t <= 0.0) return {1.0, 0.0, 0.0, 0.0};
  if (t >= 1.0) return {0.0, 0.0, 0.0, 0.0};
  // S = 1/(1 + e^r) with r = 1/(1-t) - 1/t.
  double u = 1.0 - t;
  double r = 1.0 / u - 1.0 / t;
  double r1 = 1.0 / (t * t) + 1.0 / (u * u);
  double r2 = -2.0 / (t * t * t) + 2.0 / (u * u * u);
  double r3 = 6.0 / (t * t * t * t) + 6.0 / (u * u * u * u);
  if (std::abs(r) > 700.0) return {r > 0 ? 0.0 : 1.0, 0.0, 0.0, 0.0};
  double s = 1.0 / (1.0 + std::exp(r));
  double ch = std::cosh(0.5 * r);
  double p = 1.0 / (4.0 * ch * ch);  // S(1-S)
  double s1 = -p * r1;
  double p1 = s1 * (1.0 - 2.0 * s);
  double s2 = -p1 * r1 - p * r2;
  double p2 = s2 * (1.0 - 2.0 * s) - 2.0 * s1 * s1;
  double s3 = -p2 * r1 - 2.0 * p1 * r2 - p * r3;
  return {s, s1, s2, s3};
}

LangerMap::LangerMap(const MeanFlow& mean, const TurningData& td, cd c, double alpha,
                     LangerOptions opt)
    : mean_(&mean), td_(td), c_(c), alpha_(alpha), opt_(opt) {
  if (!(alpha > 0.0)) throw DomainError("langer: alpha must be positive");
  if (std::abs(c.real() - td.cr) > 1e-14 * std::max(1.0, std::abs(td.cr)))
    throw DomainError("langer: turning data belongs to another phase speed");
  dfr0_ = td.dfr0;
  if (!(dfr0_ > 0.0)) throw NumericalError("langer: F_r'(Y0) must be positive");
  regularise_ = c.imag() != 0.0 && td.yc.has_value();
  if (regularise_ && !(opt.delta0 > 0.0)) throw DomainError("langer: delta0 must be positive");
  kappa_ = std::cbrt(alpha * alpha * dfr0_);

  double y_end = mean.y_max();
  h_local_ = std::max(1e-3, opt.local_fraction * y_end);
  step_ = 0.02;

  // Cumulative tables outward from the edges of the local window.
  double y = td_.y0 + h_local_;
  if (y < y_end) {
    up_nodes_.push_back(y);
    up_phi_.push_back(local_phi(y));
    while (y < y_end) {
      double next = std::min(y_end, y + step_);
      if (y_end - next < 0.25 * step_) next = y_end;
      cd add = integrate_gl([&](double z) { return integrand(z); }, y, next, kPanelNodes);
      up_phi_.push_back(up_phi_.back() + add);
      up_nodes_.push_back(next);
      y = next;
    }
  }
  y = td_.y0 - h_local_;
  if (y > 0.0) {
    down_nodes_.push_back(y);
    down_phi_.push_back(local_phi(y));
    while (y > 0.0) {
      double next = std::max(0.0, y - step_);
      if (next < 0.25 * step_) next = 0.0;
      cd add = integrate_gl([&](double z) { return integrand(z); }, next, y, kPanelNodes);
      down_phi_.push_back(down_phi_.back() + add);
      down_nodes_.push_back(next);
      y = next;
    }
  }

  // Chebyshev model of eta around Y0 (F~ is real there).
  cheb_a_ = std::max(0.0, td_.y0 - h_local_);
  cheb_b_ = std::min(y_end, td_.y0 + h_local_);
  std::vector<double> vals(kChebNodes);
  for (int j = 0; j < kChebNodes; ++j) {
    double x = std::cos(kPi * (j + 0.5) / kChebNodes);
    double yy = 0.5 * (cheb_a_ + cheb_b_) + 0.5 * (cheb_b_ - cheb_a_) * x;
    vals[j] = eta(yy).real();
  }
  cheb_ = cheb_fit(vals);
  cheb1_ = cheb_deriv(cheb_);
  cheb2_ = cheb_deriv(cheb1_);
  cheb3_ = cheb_deriv(cheb2_);
}

LangerMap LangerMap::with_alpha(double alpha) const {
  if (!(alpha > 0.0)) throw DomainError("langer: alpha must be positive");
  LangerMap m = *this;
  m.alpha_ = alpha;
  m.kappa_ = std::cbrt(alpha * alpha * dfr0_);
  return m;
}

std::array<double, 4> LangerMap::chi0(double y) const {
  if (!regularise_) return {1.0, 0.0, 0.0, 0.0};
  double d = opt_.delta0;
  auto s = smooth_step((y - (opt_.y2s + d)) / d);
  return {s[0], s[1] / d, s[2] / (d * d), s[3] / (d * d * d)};
}

std::array<cd, 4> LangerMap::ftilde(double y) const {
  MachJet mr = mean_->mbar(y, td_.cr);
  std::array<cd, 4> fr = {mr.f(), mr.df(), mr.d2f(), mr.d3f()};
  for (auto& v : fr) v = v.real();
  if (!regularise_) return fr;
  MachJet m = mean_->mbar(y, c_);
  std::array<cd, 4> fi = {m.f() - fr[0], m.df() - fr[1], m.d2f() - fr[2], m.d3f() - fr[3]};
  auto x = chi0(y);
  std::array<double, 4> g = {1.0 - x[0], -x[1], -x[2], -x[3]};
  std::array<cd, 4> out;
  out[0] = fr[0] + g[0] * fi[0];
  out[1] = fr[1] + g[0] * fi[1] + g[1] * fi[0];
  out[2] = fr[2] + g[0] * fi[2] + 2.0 * g[1] * fi[1] + g[2] * fi[0];
  out[3] = fr[3] + g[0] * fi[3] + 3.0 * g[1] * fi[2] + 3.0 * g[2] * fi[1] + g[3] * fi[0];
  return out;
}

cd LangerMap::integrand(double y) const {
  cd f = ftilde(y)[0] / dfr0_;
  return y >= td_.y0 ? std::sqrt(f) : std::sqrt(-f);
}

cd LangerMap::local_phi(double y) const {
  double d = y - td_.y0;
  double top = std::sqrt(std::abs(d));
  double sg = d >= 0.0 ? 1.0 : -1.0;
  // Z = Y0 + sg u^2 turns the square-root endpoint into a smooth integrand.
  return integrate_gl([&](double u) { return 2.0 * u * integrand(td_.y0 + sg * u * u); }, 0.0, top,
                      kLocalNodes);
}

cd LangerMap::phi(double y) const {
  double d = y - td_.y0;
  if (std::abs(d) <= h_local_) return local_phi(y);
  if (d > 0.0) {
    auto it = std::upper_bound(up_nodes_.begin(), up_nodes_.end(), y);
    int k = std::max(0, static_cast<int>(it - up_nodes_.begin()) - 1);
    k = std::min(k, static_cast<int>(up_nodes_.size()) - 1);
    return up_phi_[k] + integrate_gl([&](double z) { return integrand(z); }, up_nodes_[k], y,
                                     kPanelNodes);
  }
  // down_nodes_ decrease; find the last node above y.
  int k = 0;
  int lo = 0, hi = static_cast<int>(down_nodes_.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (down_nodes_[mid] >= y)
      lo = mid;
    else
      hi = mid - 1;
  }
  k = lo;
  return down_phi_[k] + integrate_gl([&](double z) { return integrand(z); }, y, down_nodes_[k],
                                     kPanelNodes);
}

cd LangerMap::eta(double y) const {
  cd p = phi(y);
  cd e = std::pow(1.5 * p, 2.0 / 3.0);
  return y >= td_.y0 ? e : -e;
}

EtaJet LangerMap::identity_jet(double y) const {
  EtaJet j;
  cd p = 1.5 * phi(y);
  cd root = std::pow(p, 1.0 / 3.0);
  j.eta = root * root;
  if (y < td_.y0) j.eta = -j.eta;
  auto f = ftilde(y);
  j.d1 = integrand(y) / root;
  cd num2 = f[1] / dfr0_ - j.d1 * j.d1 * j.d1;
  j.d2 = num2 / (2.0 * j.eta * j.d1);
  cd num3 = f[2] / dfr0_ - 5.0 * j.d1 * j.d1 * j.d2 - 2.0 * j.eta * j.d2 * j.d2;
  j.d3 = num3 / (2.0 * j.eta * j.d1);
  return j;
}

EtaJet LangerMap::jet(double y) const {
  double d = y - td_.y0;
  if (std::abs(d) > 0.5 * h_local_ || y < cheb_a_ || y > cheb_b_) return identity_jet(y);
  double half = 0.5 * (cheb_b_ - cheb_a_);
  double x = (y - 0.5 * (cheb_a_ + cheb_b_)) / half;
  EtaJet j;
  j.eta = cheb_eval(cheb_, x);
  j.d1 = cheb_eval(cheb1_, x) / half;
  j.d2 = cheb_eval(cheb2_, x) / (half * half);
  j.d3 = cheb_eval(cheb3_, x) / (half * half * half);
  return j;
}

double LangerMap::w0(double y) const {
  if (y <= td_.y0) return 0.0;
  return std::sqrt(dfr0_) * phi(y).real();
}

cd LangerMap::zeta(double y) const {
  double s = alpha_ * std::sqrt(dfr0_);
  if (y >= td_.y0) return s * phi(y);
  return cd(0.0, -s * phi(y).real());
}

double LangerMap::supersonic_weight() const {
  if (td_.y0 <= 0.0) return 0.0;
  return std::sqrt(dfr0_) * phi(0.0).real();
}

double LangerMap::guard() const { return std::max(10.0 * std::abs(c_.imag()), 1e-3); }

cd LangerMap::q1(double y) const {
  if (td_.yc && std::abs(y - *td_.yc) < guard())
    throw DomainError("Q1 requested inside the critical-layer guard band");
  return q1(y, jet(y), mean_->mbar(y, c_));
}

cd LangerMap::q1(double y, const EtaJet& e, const MachJet& m) const {
  if (td_.yc && std::abs(y - *td_.yc) < guard())
    throw DomainError("Q1 requested inside the critical-layer guard band");
  cd r1 = m.dm / m.m, r2 = m.d2m / m.m;
  cd s = e.d2 / e.d1;
  return r2 - 2.0 * r1 * r1 + 0.75 * s * s - e.d3 / (2.0 * e.d1);
}

cd LangerMap::q2(double y) const {
  if (!regularise_) return 0.0;
  return -alpha_ * alpha_ * chi0(y)[0] * mean_->Fi(y, c_);
}

double q1_tilde(const LangerMap& real_map, double y) {
  if (real_map.c().imag() != 0.0) throw DomainError("q1_tilde needs a real phase speed");
  if (y > real_map.turning().y0 + 1e-12) throw DomainError("q1_tilde is defined on Y <= Y0");
  return real_map.q1(y).real();
}

}  // namespace macksolve
