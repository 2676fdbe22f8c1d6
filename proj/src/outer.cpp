#include "macksolve/outer.hpp"

#include <algorithm>
#include <cmath>

#include "macksolve/quadrature.hpp"

namespace macksolve {

BasisPoint OuterBasis::eval(double y) const {
  const LangerMap& L = *langer_;
  EtaJet j = L.jet(y);
  MachJet m = L.mean().mbar(y, L.c());
  double k = L.kappa();
  AiryValue av = airy_pair_scaled(k * j.eta);
  cd sq = std::sqrt(j.d1);
  BasisPoint p;
  p.y = y;
  p.jet = j;
  p.mach = m;
  p.mbar = m.m;
  p.e = m.m / sq;
  p.de = m.dm / sq - m.m * j.d2 / (2.0 * j.d1 * sq);
  cd g = p.e * k * j.d1;
  p.a = p.e * av.ai;
  p.da = p.de * av.ai + g * av.dai;
  p.b = p.e * av.bi;
  p.db = p.de * av.bi + g * av.dbi;
  p.log_scale = av.log_scale;
  return p;
}

cd OuterBasis::expected_wronskian(double y) const {
  cd m = langer_->mean().mbar(y, langer_->c()).m;
  return -langer_->kappa() * m * m / kPi;
}

OuterSolution solve_outer(const OuterBasis& basis, const std::function<cd(double)>& f,
                          std::vector<double> ys, double rel_tol, double y_tail) {
  BasisSource g = [&f](double y, const BasisPoint&) { return f(y); };
  return solve_outer(basis, g, std::move(ys), rel_tol, y_tail);
}

OuterSolution solve_outer(const OuterBasis& basis, const BasisSource& f, std::vector<double> ys,
                          double rel_tol, double y_tail) {
  const LangerMap& L = basis.langer();
  if (y_tail <= 0.0) y_tail = L.mean().y_max();
  std::sort(ys.begin(), ys.end());
  if (ys.empty()) throw DomainError("solve_outer: no output points");
  if (ys.front() < 0.0 || ys.back() > y_tail) throw DomainError("solve_outer: output outside [0, tail]");

  std::vector<double> nodes;
  nodes.push_back(0.0);
  for (double y : ys)
    if (y > nodes.back()) nodes.push_back(y);
  if (y_tail > nodes.back()) nodes.push_back(y_tail);
  const std::size_t n = nodes.size();
  std::vector<BasisPoint> bp(n);
  for (std::size_t i = 0; i < n; ++i) bp[i] = basis.eval(nodes[i]);

  double pref_k = -kPi / L.kappa();

  // Forward sweep for calA e^{-L}, backward sweep for calB e^{L}.
  std::vector<cd> ia(n, 0.0), ib(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double l1 = bp[i + 1].log_scale;
    auto g = [&](double z) -> cd {
      BasisPoint p = basis.eval(z);
      cd fz = f(z, p);
      if (fz == 0.0) return 0.0;
      return p.b * std::exp(p.log_scale - l1) * fz / (p.mbar * p.mbar);
    };
    cd add = integrate_adaptive(g, nodes[i], nodes[i + 1], rel_tol, 1e-300).value;
    ia[i + 1] = ia[i] * std::exp(bp[i].log_scale - l1) + add;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    double l0 = bp[i].log_scale;
    auto g = [&](double z) -> cd {
      BasisPoint p = basis.eval(z);
      cd fz = f(z, p);
      if (fz == 0.0) return 0.0;
      return p.a * std::exp(l0 - p.log_scale) * fz / (p.mbar * p.mbar);
    };
    cd add = integrate_adaptive(g, nodes[i], nodes[i + 1], rel_tol, 1e-300).value;
    ib[i] = ib[i + 1] * std::exp(l0 - bp[i + 1].log_scale) + add;
  }

  OuterSolution out;
  double scale = 0.0;
  for (double y : ys) {
    std::size_t i = std::lower_bound(nodes.begin(), nodes.end(), y) - nodes.begin();
    const BasisPoint& p = bp[i];
    cd ca = pref_k * ia[i], cb = pref_k * ib[i];
    out.y.push_back(y);
    out.cal_a.push_back(ca);
    out.cal_b.push_back(cb);
    out.log_scale.push_back(p.log_scale);
    out.p.push_back(ca * p.a + cb * p.b);
    out.dp.push_back(ca * p.da + cb * p.db);
    scale = std::max(scale, std::abs(ca * p.a) + std::abs(cb * p.b));
  }

  // Far tail beyond y_tail, estimated from the local exponential decay of A f.
  const BasisPoint& pt = bp.back();
  cd fz = f(nodes.back(), pt);
  if (fz != 0.0) {
    double rate = L.alpha() * std::max(1e-3, std::sqrt(L.mean().F(nodes.back(), L.c())).real());
    double tail = std::abs(pt.a * fz / (pt.mbar * pt.mbar)) / rate * std::abs(pref_k);
    // Relative to the output point closest to the tail, where the neglected piece is largest.
    const BasisPoint& pl = bp[std::lower_bound(nodes.begin(), nodes.end(), ys.back()) - nodes.begin()];
    tail *= std::exp(pl.log_scale - pt.log_scale) * std::abs(pl.b);
    out.truncation_error = tail;
    if (tail > 1e-8 * std::max(scale, 1e-300))
      throw NumericalError("solve_outer: source does not decay; far-field truncation error " +
                           std::to_string(tail / std::max(scale, 1e-300)));
  }
  return out;
}

}  // namespace macksolve
