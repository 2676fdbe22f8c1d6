#include "macksolve/rayleigh.hpp"

#include <algorithm>
#include <cmath>

#include "macksolve/ode.hpp"
#include "macksolve/quadrature.hpp"

namespace macksolve {

RayleighSweep::RayleighSweep(const MeanFlow& mean, double yc, cd c, double alpha, double y_lo,
                             double y_hi)
    : mean_(&mean), yc_(yc), c_(c), alpha_(alpha), lo_(y_lo), hi_(y_hi) {
  if (!(alpha > 0.0)) throw DomainError("rayleigh: alpha must be positive");
  if (!(c.imag() > 0.0)) throw DomainError("rayleigh: c_i must be positive");
  if (c.imag() < kRayleighCiFloor)
    throw FloorError("rayleigh: c_i below 1e-13 cannot be resolved in double precision");
  if (!(y_lo < yc && yc < y_hi)) throw DomainError("rayleigh: window must contain Y_c");
  MachJet m = mean.mbar(yc, c);
  State s0 = {m.m, m.dm / m.f(), 0.0};
  for (int side = 0; side < 2; ++side) {
    auto& store = side == 0 ? up_ : down_;
    double end = side == 0 ? hi_ : lo_;
    store.emplace_back(yc, s0);
    DoPri<3> ode([this](double y, const State& s, State& ds) { rhs(y, s, ds); });
    ode.rtol = 1e-12;
    ode.atol = 1e-300;
    State s = s0;
    ode.integrate(yc, end, s, [this](double y) { return cap(y); },
                  [&store](double y, State& st) { store.emplace_back(y, st); },
                  0.1 * cap(yc));
  }
}

void RayleighSweep::rhs(double y, const State& s, State& ds) const {
  MachJet m = mean_->mbar(y, c_);
  cd F = m.f();
  ds[0] = F * s[1];
  ds[1] = (alpha_ * alpha_ + m.d2m / (m.m * F) + 2.0 * m.dm * m.dm / (F * F)) * s[0];
  ds[2] = F / (s[0] * s[0]);
}

double RayleighSweep::cap(double y) const {
  return 0.1 * std::min(1.0 / alpha_, std::abs(y - yc_) + c_.imag());
}

RayleighSweep::State RayleighSweep::run(double x0, double x1, State s) const {
  DoPri<3> ode([this](double y, const State& st, State& ds) { rhs(y, st, ds); });
  ode.rtol = 1e-12;
  ode.atol = 1e-300;
  ode.integrate(x0, x1, s, [this](double y) { return cap(y); }, nullptr,
                std::min(std::abs(x1 - x0), 0.1 * cap(x0)));
  return s;
}

RayleighSweep::State RayleighSweep::at(double y) const {
  if (y < lo_ - 1e-12 || y > hi_ + 1e-12) throw DomainError("rayleigh: point outside the window");
  if (y >= yc_) {
    auto it = std::upper_bound(up_.begin(), up_.end(), y,
                               [](double v, const auto& n) { return v < n.first; });
    const auto& n = *(it - 1);
    return n.first == y ? n.second : run(n.first, y, n.second);
  }
  // down_ is ordered by decreasing Y.
  auto it = std::upper_bound(down_.begin(), down_.end(), y,
                             [](double v, const auto& n) { return v > n.first; });
  const auto& n = *(it - 1);
  return n.first == y ? n.second : run(n.first, y, n.second);
}

namespace {

// Panel edges from Y_c outward with widths h0 * 1.2^k, capped at hmax.
std::vector<double> graded_edges(double lo, double yc, double hi, double h0, double hmax) {
  std::vector<double> left, right;
  double w = h0, y = yc;
  while (y < hi) {
    y = std::min(hi, y + w);
    if (hi - y < 0.3 * w) y = hi;
    right.push_back(y);
    w = std::min(hmax, 1.2 * w);
  }
  w = h0;
  y = yc;
  while (y > lo) {
    y = std::max(lo, y - w);
    if (y - lo < 0.3 * w) y = lo;
    left.push_back(y);
    w = std::min(hmax, 1.2 * w);
  }
  std::vector<double> e(left.rbegin(), left.rend());
  e.push_back(yc);
  e.insert(e.end(), right.begin(), right.end());
  return e;
}

}  // namespace

PhiSolution::PhiSolution(const MeanFlow& mean, const TurningData& td, const CriticalWindow& window,
                         cd c, double alpha)
    : mean_(&mean),
      td_(td),
      win_(window),
      c_(c),
      alpha_(alpha),
      sweep_(mean, td.yc.value_or(0.0), c, alpha, window.y1s, window.y2s) {
  if (!td.yc) throw DomainError("rayleigh: no critical point for this phase speed");
  if (!(alpha > 0.0)) throw DomainError("rayleigh: alpha must be positive");
  MachJet m = mean.mbar(*td.yc, c);
  m_c_ = m.m;
  dm_c_ = m.dm;

  double h0 = std::min(c.imag(), 0.1 / alpha);
  double hmax = std::min(0.05, 0.5 / alpha);
  mesh_.edges = graded_edges(window.y1s, *td.yc, window.y2s, h0, hmax);
  const GaussRule& g = gauss_legendre(WindowMesh::kNodes);
  for (std::size_t p = 0; p + 1 < mesh_.edges.size(); ++p) {
    double a = mesh_.edges[p], b = mesh_.edges[p + 1];
    for (int j = 0; j < WindowMesh::kNodes; ++j) {
      double z = 0.5 * (a + b) + 0.5 * (b - a) * g.x[j];
      auto s = sweep_.at(z);
      MachJet mz = mean.mbar(z, c);
      mesh_.z.push_back(z);
      mesh_.w.push_back(0.5 * (b - a) * g.w[j]);
      mesh_.phi.push_back(s[0]);
      mesh_.mbar.push_back(mz.m);
      mesh_.f_over_phi2.push_back(mz.f() / (s[0] * s[0]));
    }
  }
}

cd PhiSolution::phi(double y) const { return sweep_.at(y)[0]; }

cd PhiSolution::dphi(double y) const {
  auto s = sweep_.at(y);
  return mean_->F(y, c_) * s[1];
}

cd PhiSolution::psi(double y) const {
  double fr = mean_->Fr(y, td_.cr);
  if (fr <= 0.0) throw DomainError("psi: point lies in the supersonic regime");
  double q = std::pow(fr, 0.25);
  double aw = alpha_ * wc_weight(*mean_, td_, y);
  return dm_c_ / alpha_ * q * std::sinh(aw) + m_c_ * q * std::cosh(aw);
}

cd PhiSolution::carried_integral(double a, double b) const {
  return sweep_.at(b)[2] - sweep_.at(a)[2];
}

cd phi_inverse_square_integral(const PhiSolution& phi) {
  const WindowMesh& m = phi.mesh();
  // Sum from both ends toward Y_c so the large values near Y_c come last.
  std::size_t mid = std::lower_bound(m.z.begin(), m.z.end(), phi.yc()) - m.z.begin();
  cd left = 0.0, right = 0.0;
  for (std::size_t i = 0; i < mid; ++i) left += m.w[i] * m.f_over_phi2[i];
  for (std::size_t i = m.z.size(); i-- > mid;) right += m.w[i] * m.f_over_phi2[i];
  return left + right;
}

double inverse_square_imag_leading(const MeanFlow& mean, const TurningData& td) {
  if (!td.yc) throw DomainError("rayleigh: no critical point");
  MachJet m = mean.mbar(*td.yc, cd(td.cr, 0.0));
  double d1 = m.dm.real(), d2 = m.d2m.real();
  return -kPi * d2 / (d1 * d1 * d1);
}

RayleighSolution::RayleighSolution(const PhiSolution& phi, std::function<cd(double)> f)
    : phi_(&phi), f_(std::move(f)) {
  const WindowMesh& m = phi.mesh();
  const int q = WindowMesh::kNodes;
  std::size_t np = m.edges.size() - 1;
  double yc = phi.yc();
  std::size_t pc = std::lower_bound(m.edges.begin(), m.edges.end(), yc) - m.edges.begin();

  std::vector<cd> fval(m.z.size());
  for (std::size_t i = 0; i < m.z.size(); ++i) fval[i] = f_(m.z[i]);
  auto kernel = [&](double z) {
    cd fz = f_(z);
    if (fz == 0.0) return cd(0.0);
    return phi.phi(z) * fz / phi.mean().mbar(z, phi.c()).m;
  };
  // K = int_{Y_c} phi f/Mbar at edges, outward from Y_c in both directions.
  k_edge_.assign(np + 1, 0.0);
  for (std::size_t p = pc; p < np; ++p) {
    cd s = 0.0;
    for (int j = 0; j < q; ++j) s += m.w[p * q + j] * m.phi[p * q + j] * fval[p * q + j] / m.mbar[p * q + j];
    k_edge_[p + 1] = k_edge_[p] + s;
  }
  for (std::size_t p = pc; p-- > 0;) {
    cd s = 0.0;
    for (int j = 0; j < q; ++j) s += m.w[p * q + j] * m.phi[p * q + j] * fval[p * q + j] / m.mbar[p * q + j];
    k_edge_[p] = k_edge_[p + 1] - s;
  }
  // K at nodes: nested rule from the panel edge nearer to Y_c.
  k_node_.assign(m.z.size(), 0.0);
  g_node_.assign(m.z.size(), 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    bool active = f_(m.edges[p]) != 0.0 || f_(m.edges[p + 1]) != 0.0;
    for (int j = 0; j < q && !active; ++j) active = fval[p * q + j] != 0.0;
    for (int j = 0; j < q; ++j) {
      std::size_t i = p * q + j;
      double z = m.z[i];
      if (p >= pc)
        k_node_[i] = k_edge_[p] + (active ? integrate_gl(kernel, m.edges[p], z, q) : cd(0.0));
      else
        k_node_[i] = k_edge_[p + 1] - (active ? integrate_gl(kernel, z, m.edges[p + 1], q) : cd(0.0));
      g_node_[i] = m.f_over_phi2[i] * k_node_[i];
    }
  }
  // Cumulative integrals of F/phi^2 and G_f from each end.
  f1_.assign(np + 1, 0.0);
  g1_.assign(np + 1, 0.0);
  f2_.assign(np + 1, 0.0);
  g2_.assign(np + 1, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    cd sf = 0.0, sg = 0.0;
    for (int j = 0; j < q; ++j) {
      sf += m.w[p * q + j] * m.f_over_phi2[p * q + j];
      sg += m.w[p * q + j] * g_node_[p * q + j];
    }
    f1_[p + 1] = f1_[p] + sf;
    g1_[p + 1] = g1_[p] + sg;
  }
  for (std::size_t p = np; p-- > 0;) {
    cd sf = 0.0, sg = 0.0;
    for (int j = 0; j < q; ++j) {
      sf += m.w[p * q + j] * m.f_over_phi2[p * q + j];
      sg += m.w[p * q + j] * g_node_[p * q + j];
    }
    f2_[p] = f2_[p + 1] + sf;
    g2_[p] = g2_[p + 1] + sg;
  }
  cd denom = phi_inverse_square_integral(phi);
  if (std::abs(denom) == 0.0) throw NumericalError("rayleigh: vanishing int F/phi^2");
  mu_ = -g1_[np] / denom;
}

RayleighSolution::Partial RayleighSolution::partial(double y) const {
  const PhiSolution& ph = *phi_;
  const WindowMesh& m = ph.mesh();
  const int q = WindowMesh::kNodes;
  std::size_t np = m.edges.size() - 1;
  if (y < m.edges.front() - 1e-12 || y > m.edges.back() + 1e-12)
    throw DomainError("rayleigh: point outside the window");
  y = std::clamp(y, m.edges.front(), m.edges.back());
  std::size_t p = std::upper_bound(m.edges.begin(), m.edges.end(), y) - m.edges.begin();
  p = std::min(np - 1, p == 0 ? 0 : p - 1);
  double a = m.edges[p], b = m.edges[p + 1];
  std::size_t pc = std::lower_bound(m.edges.begin(), m.edges.end(), ph.yc()) - m.edges.begin();

  auto kernel = [&](double z) {
    cd fz = f_(z);
    if (fz == 0.0) return cd(0.0);
    return ph.phi(z) * fz / ph.mean().mbar(z, ph.c()).m;
  };
  auto k_at = [&](double z) -> cd {
    if (p >= pc) return k_edge_[p] + integrate_gl(kernel, a, z, q);
    return k_edge_[p + 1] - integrate_gl(kernel, z, b, q);
  };
  auto fp2 = [&](double z) {
    cd v = ph.phi(z);
    return ph.mean().F(z, ph.c()) / (v * v);
  };
  auto gf = [&](double z) { return fp2(z) * k_at(z); };

  Partial r;
  r.f1 = f1_[p] + integrate_gl(fp2, a, y, q);
  r.g1 = g1_[p] + integrate_gl(gf, a, y, q);
  r.f2 = f2_[p + 1] + integrate_gl(fp2, y, b, q);
  r.g2 = g2_[p + 1] + integrate_gl(gf, y, b, q);
  r.k = k_at(y);
  r.phi = ph.phi(y);
  r.dphi = ph.dphi(y);
  r.fp2 = fp2(y);
  return r;
}

cd RayleighSolution::value_left(double y) const {
  Partial r = partial(y);
  return r.phi * (r.g1 + mu_ * r.f1);
}

cd RayleighSolution::value_right(double y) const {
  Partial r = partial(y);
  return -r.phi * (r.g2 + mu_ * r.f2);
}

cd RayleighSolution::value(double y) const {
  return y <= phi_->yc() ? value_left(y) : value_right(y);
}

cd RayleighSolution::derivative(double y) const {
  Partial r = partial(y);
  cd bracket = y <= phi_->yc() ? r.g1 + mu_ * r.f1 : -(r.g2 + mu_ * r.f2);
  return r.dphi * bracket + r.phi * (r.fp2 * r.k + mu_ * r.fp2);
}

}  // namespace macksolve
