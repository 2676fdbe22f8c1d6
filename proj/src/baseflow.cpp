#include "macksolve/baseflow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace macksolve {

namespace {

constexpr int kOrder = 24;
using Coeffs = std::array<double, kOrder + 1>;

// Taylor coefficients of f about a point where (f, f', f'') are known,
// generated from (k+3)(k+2)(k+1) a_{k+3} = -1/2 sum_j a_j (k-j+2)(k-j+1) a_{k-j+2}.
Coeffs blasius_coeffs(double f0, double f1, double f2) {
  Coeffs a{};
  a[0] = f0;
  a[1] = f1;
  a[2] = 0.5 * f2;
  for (int k = 0; k + 3 <= kOrder; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a[j] * (k - j + 2) * (k - j + 1) * a[k - j + 2];
    a[k + 3] = -0.5 * s / ((k + 3.0) * (k + 2.0) * (k + 1.0));
  }
  return a;
}

// m-th derivative of the truncated series at offset d.
double series_derivative(const Coeffs& a, int m, double d) {
  double s = 0.0;
  for (int k = kOrder; k >= m; --k) {
    double fall = 1.0;
    for (int i = 0; i < m; ++i) fall *= (k - i);
    s = s * d + fall * a[k];
  }
  return s;
}

struct Shot {
  std::vector<double> f, f1, f2;
};

Shot integrate_blasius(double s, double y_max, int n) {
  Shot out;
  out.f.resize(n);
  out.f1.resize(n);
  out.f2.resize(n);
  double h = y_max / (n - 1);
  int sub = std::max(1, static_cast<int>(std::ceil(h / 0.02)));
  double hs = h / sub;
  double f = 0.0, f1 = 0.0, f2 = s;
  out.f[0] = f;
  out.f1[0] = f1;
  out.f2[0] = f2;
  for (int j = 1; j < n; ++j) {
    for (int k = 0; k < sub; ++k) {
      Coeffs a = blasius_coeffs(f, f1, f2);
      f = series_derivative(a, 0, hs);
      f1 = series_derivative(a, 1, hs);
      f2 = series_derivative(a, 2, hs);
    }
    out.f[j] = f;
    out.f1[j] = f1;
    out.f2[j] = f2;
  }
  return out;
}

std::vector<double> uniform_grid(double y_max, int n) {
  std::vector<double> g(n);
  for (int j = 0; j < n; ++j) g[j] = y_max * j / (n - 1);
  g.back() = y_max;
  return g;
}

int locate(const std::vector<double>& g, double y) {
  auto it = std::upper_bound(g.begin(), g.end(), y);
  int j = static_cast<int>(it - g.begin()) - 1;
  return std::clamp(j, 0, static_cast<int>(g.size()) - 2);
}

}  // namespace

std::string BaseFlow::kind_name() const {
  switch (kind) {
    case Kind::Blasius:
      return "blasius";
    case Kind::Tanh:
      return "tanh";
    default:
      return "table";
  }
}

ProfileJet BaseFlow::eval(double y) const {
  ProfileJet p;
  if (kind == Kind::Tanh) {
    double t = std::tanh(y), sech = 1.0 / std::cosh(y), s2 = sech * sech;
    p.u = t;
    p.du = s2;
    p.d2u = -2.0 * t * s2;
    p.d3u = s2 * (4.0 * t * t - 2.0);
    return p;
  }
  if (kind == Kind::Blasius) {
    int j = locate(grid, y);
    if (y - grid[j] > grid[j + 1] - y) ++j;
    Coeffs a = blasius_coeffs(stream[j], u[j], du[j]);
    double d = y - grid[j];
    p.u = series_derivative(a, 1, d);
    p.du = series_derivative(a, 2, d);
    p.d2u = series_derivative(a, 3, d);
    p.d3u = series_derivative(a, 4, d);
    return p;
  }
  // Quintic Hermite on (u, u', u''), cubic Hermite on (u'', u''').
  int j = locate(grid, y);
  double h = grid[j + 1] - grid[j];
  double t = (y - grid[j]) / h;
  double y0 = u[j], y1 = u[j + 1];
  double d0 = du[j] * h, d1 = du[j + 1] * h;
  double s0 = d2u[j] * h * h, s1 = d2u[j + 1] * h * h;
  // Monomial coefficients of the quintic in t.
  double c0 = y0, c1 = d0, c2 = 0.5 * s0;
  double c3 = 10 * (y1 - y0) - 6 * d0 - 4 * d1 - 1.5 * s0 + 0.5 * s1;
  double c4 = -15 * (y1 - y0) + 8 * d0 + 7 * d1 + 1.5 * s0 - s1;
  double c5 = 6 * (y1 - y0) - 3 * (d0 + d1) - 0.5 * s0 + 0.5 * s1;
  p.u = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
  p.du = (c1 + t * (2 * c2 + t * (3 * c3 + t * (4 * c4 + t * 5 * c5)))) / h;
  double e0 = d2u[j], e1 = d2u[j + 1], g0 = d3u[j] * h, g1 = d3u[j + 1] * h;
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  p.d2u = h00 * e0 + h10 * g0 + h01 * e1 + h11 * g1;
  double dh00 = 6 * t * t - 6 * t, dh10 = 3 * t * t - 4 * t + 1;
  double dh01 = -6 * t * t + 6 * t, dh11 = 3 * t * t - 2 * t;
  p.d3u = (dh00 * e0 + dh10 * g0 + dh01 * e1 + dh11 * g1) / h;
  return p;
}

BaseFlow blasius(double y_max, int n) {
  if (!(y_max >= 15.0)) throw DomainError("blasius: y_max must be at least 15");
  if (n < 500) throw DomainError("blasius: n must be at least 500");
  auto end_slope = [&](double s) {
    Shot sh = integrate_blasius(s, y_max, n);
    return sh.f1.back();
  };
  double lo = 0.1, hi = 1.0;
  double glo = end_slope(lo) - 1.0, ghi = end_slope(hi) - 1.0;
  if (glo + 1.0 < 0.999 && ghi + 1.0 < 0.999)
    throw DomainError("blasius: f'(y_max) < 0.999 at both bracket ends");
  if (glo > 0.0 || ghi < 0.0) throw NumericalError("blasius: shooting bracket lost");
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    double g = end_slope(mid) - 1.0;
    if (g < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double s = 0.5 * (lo + hi);
  Shot sh = integrate_blasius(s, y_max, n);
  if (std::abs(sh.f1.back() - 1.0) > 1e-8) throw NumericalError("blasius: shooting did not converge");

  BaseFlow b;
  b.kind = BaseFlow::Kind::Blasius;
  b.grid = uniform_grid(y_max, n);
  b.wall_shear = s;
  b.stream = sh.f;
  b.u = sh.f1;
  b.du = sh.f2;
  b.d2u.resize(n);
  b.d3u.resize(n);
  for (int j = 0; j < n; ++j) {
    double f3 = -0.5 * sh.f[j] * sh.f2[j];
    b.d2u[j] = f3;
    b.d3u[j] = -0.5 * (sh.f1[j] * sh.f2[j] + sh.f[j] * f3);
  }
  b.decay_rate = envelope_decay_rate(b);
  return b;
}

BaseFlow tanh_profile(double y_max, int n) {
  if (!(y_max > 0.0) || n < 2) throw DomainError("tanh: need y_max > 0 and n >= 2");
  BaseFlow b;
  b.kind = BaseFlow::Kind::Tanh;
  b.grid = uniform_grid(y_max, n);
  b.u.resize(n);
  b.du.resize(n);
  b.d2u.resize(n);
  b.d3u.resize(n);
  for (int j = 0; j < n; ++j) {
    ProfileJet p = b.eval(b.grid[j]);
    b.u[j] = p.u;
    b.du[j] = p.du;
    b.d2u[j] = p.d2u;
    b.d3u[j] = p.d3u;
  }
  b.decay_rate = 2.0;
  return b;
}

BaseFlow table_profile(std::vector<double> grid, std::vector<double> u, std::vector<double> du,
                       std::vector<double> d2u, std::vector<double> d3u) {
  std::size_t n = grid.size();
  if (n < 4 || u.size() != n || du.size() != n || d2u.size() != n || d3u.size() != n)
    throw DomainError("table profile: arrays must share a length of at least 4");
  for (std::size_t j = 1; j < n; ++j)
    if (!(grid[j] > grid[j - 1])) throw DomainError("table profile: grid must be strictly increasing");
  BaseFlow b;
  b.kind = BaseFlow::Kind::Table;
  b.grid = std::move(grid);
  b.u = std::move(u);
  b.du = std::move(du);
  b.d2u = std::move(d2u);
  b.d3u = std::move(d3u);
  b.decay_rate = envelope_decay_rate(b);
  return b;
}

double envelope_decay_rate(const BaseFlow& flow) {
  double rate = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int j = 0; j < flow.size(); ++j) {
    double y = flow.grid[j];
    if (y < 5.0) continue;
    double vals[4] = {flow.u[j] - 1.0, flow.du[j], flow.d2u[j], flow.d3u[j]};
    for (double v : vals) {
      double a = std::abs(v);
      if (a == 0.0) continue;
      rate = std::min(rate, (std::log(10.0) - std::log(a)) / y);
      any = true;
    }
  }
  return any ? rate : 0.0;
}

double lsq_decay_rate(const BaseFlow& flow) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  double half = 0.5 * flow.y_max();
  for (int j = 0; j < flow.size(); ++j) {
    double y = flow.grid[j];
    double a = std::abs(flow.u[j] - 1.0);
    if (y < half || a < 1e-14) continue;
    double l = std::log(a);
    sx += y;
    sy += l;
    sxx += y * y;
    sxy += y * l;
    ++m;
  }
  if (m < 3) return 0.0;
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return -slope;
}

bool AssumptionReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.passed; });
}

const Clause* AssumptionReport::find(const std::string& name) const {
  for (const Clause& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

AssumptionReport check_structure_assumptions(const BaseFlow& flow) {
  AssumptionReport r;
  const double eps = std::numeric_limits<double>::epsilon();
  int n = flow.size();

  r.clauses.push_back({"wall", n > 0 && flow.u[0] == 0.0, "U_B(0) = 0"});
  r.clauses.push_back({"free_stream", n > 0 && flow.u.back() >= 1.0 - 1e-6, "U_B(y_max) >= 1 - 1e-6"});

  bool mono = true;
  int bad = -1;
  for (int j = 0; j + 1 < n && mono; ++j) {
    double a = flow.u[j], b = flow.u[j + 1];
    // Within 1e-10 of 1 the increments fall below an ulp, so values may repeat or dip by one.
    bool saturated = b >= a - 4 * eps && std::abs(1.0 - a) <= 1e-10;
    if (!(b > a || saturated) || b > 1.0 + 4 * eps) {
      mono = false;
      bad = j;
    }
  }
  r.clauses.push_back({"monotone", mono, mono ? "strictly increasing to rounding resolution"
                                              : "fails at node " + std::to_string(bad)});

  bool shear = std::all_of(flow.du.begin(), flow.du.end(), [](double v) { return v > 0.0; });
  r.clauses.push_back({"positive_shear", shear, "dU_B/dY > 0 at every node"});

  double rate = envelope_decay_rate(flow);
  double lsq = lsq_decay_rate(flow);
  bool decays = rate > 0.0 && std::isfinite(rate);
  r.clauses.push_back({"exponential_decay", decays,
                       "envelope rate " + std::to_string(rate) + " with C = 10, lsq slope " +
                           std::to_string(lsq)});
  return r;
}

}  // namespace macksolve
