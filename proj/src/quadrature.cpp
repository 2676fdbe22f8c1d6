#include "macksolve/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace macksolve {

namespace {

GaussRule build_gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        break;
      }
      r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    r.x[i] = x;
  }
  return r;
}

// Kronrod 15 / Gauss 7 abscissae and weights (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cd value;
  double error;
  int depth;
  bool floor;  // error estimate at the rounding level of the panel
};

Panel gk15(const std::function<cd(double)>& f, double a, double b, int depth, int& evals) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cd fc = f(c);
  cd rk = fc * kWgk[7];
  cd rg = fc * kWg[3];
  double ra = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    cd f1 = f(c - dx), f2 = f(c + dx);
    cd s = f1 + f2;
    rk += kWgk[j] * s;
    ra += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) rg += kWg[j / 2] * s;
  }
  evals += 15;
  double err = std::abs((rk - rg) * h);
  double round = 50.0 * 2.220446049250313e-16 * ra * std::abs(h);
  Panel p{a, b, rk * h, std::max(err, round), depth, err <= round};
  return p;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

cd integrate_gl(const std::function<cd(double)>& f, double a, double b, int n) {
  const GaussRule& g = gauss_legendre(n);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cd s = 0.0;
  for (int i = 0; i < n; ++i) s += g.w[i] * f(c + h * g.x[i]);
  return s * h;
}

QuadResult integrate_adaptive(const std::function<cd(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_depth) {
  QuadResult out;
  if (a == b) return out;
  std::vector<Panel> done, todo;
  todo.push_back(gk15(f, a, b, 0, out.evaluations));
  cd total = todo.back().value;
  double err = todo.back().error;
  while (true) {
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) break;
    // Refine every panel whose share of the error is above its length share.
    std::vector<Panel> next;
    bool refined = false;
    for (const Panel& p : todo) {
      double share = tol * std::abs(p.b - p.a) / std::abs(b - a);
      if (p.error > share && p.error > 0.0 && !p.floor) {
        if (p.depth >= max_depth) throw NumericalError("adaptive quadrature: depth limit reached");
        if (out.evaluations > 4000000) throw NumericalError("adaptive quadrature: evaluation budget exhausted");
        double m = 0.5 * (p.a + p.b);
        next.push_back(gk15(f, p.a, m, p.depth + 1, out.evaluations));
        next.push_back(gk15(f, m, p.b, p.depth + 1, out.evaluations));
        refined = true;
      } else {
        done.push_back(p);
      }
    }
    todo.swap(next);
    if (!refined) break;
    total = 0.0;
    err = 0.0;
    for (const Panel& p : done) {
      total += p.value;
      err += p.error;
    }
    for (const Panel& p : todo) {
      total += p.value;
      err += p.error;
    }
  }
  out.value = total;
  out.error = err;
  return out;
}

}  // namespace macksolve
