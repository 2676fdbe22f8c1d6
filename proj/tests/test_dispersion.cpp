#include <cmath>

#include "doctest.h"
#include "macksolve/dispersion.hpp"
#include "macksolve/quadrature.hpp"
#include "support.hpp"

using namespace macksolve;

namespace {

// J on a mesh graded geometrically toward Y0 (ratio 1/2, 60 panels), 20 Gauss
// nodes per panel, no change of variables.
double j_bruteforce(const MeanFlow& m, double cr) {
  TurningData td = turning_point_y0(m, cr);
  LangerMap map(m, td, cd(cr, 0.0), 1.0, LangerOptions{});
  auto g = [&](double z) -> cd {
    double mf = -m.Fr(z, cr);
    return mf > 0.0 ? q1_tilde(map, z) / std::sqrt(mf) : 0.0;
  };
  double sum = 0.0, a = 0.0, len = td.y0;
  for (int k = 0; k < 60; ++k) {
    len *= 0.5;
    double b = td.y0 - len;
    sum += integrate_gl(g, a, b, 20).real();
    a = b;
  }
  return sum;
}

const DispersionContext& ctx08() {
  static const DispersionContext c(testing::mach3(), 0.8);
  return c;
}

const std::vector<DispersionRoot>& roots_10_35() {
  static const auto r = real_dispersion_roots(ctx08(), 10.0, 35.0);
  return r;
}

std::vector<DispersionRoot> synthetic(std::vector<int> signs, std::vector<bool> flags = {}) {
  std::vector<DispersionRoot> r(signs.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i].alpha = 10.0 + i;
    r[i].cos_sign = signs[i];
    r[i].flagged = i < flags.size() && flags[i];
  }
  return r;
}

}  // namespace

TEST_SUITE("dispersion") {
  TEST_CASE("J agrees with a brute-force graded quadrature") {
    for (double cr : {0.6, 0.8, 0.95, 1.1}) {
      double j = j_integral(testing::mach3(), cr).value;
      double o = j_bruteforce(testing::mach3(), cr);
      CHECK_MESSAGE(std::abs(j - o) <= 1e-6 * std::abs(o), "c_r = " << cr << " J = " << j << " oracle " << o);
    }
  }

  TEST_CASE("J domain and continuity") {
    const MeanFlow& m = testing::mach3();
    CHECK(j_domain_min(m) == doctest::Approx(std::sqrt(2.8) / 3.0));
    CHECK(j_domain_max(m) == doctest::Approx(4.0 / 3.0));
    std::vector<double> js;
    for (int k = 0; k <= 40; ++k) js.push_back(j_integral(m, 0.6 + 0.01 * k).value);
    for (std::size_t k = 1; k + 1 < js.size(); ++k) {
      double jump = std::abs(js[k] - js[k - 1]);
      double neighbours = std::max(std::abs(js[k + 1] - js[k]), k >= 2 ? std::abs(js[k - 1] - js[k - 2]) : 0.0);
      CHECK_MESSAGE(jump <= 10.0 * neighbours, "c_r = " << 0.6 + 0.01 * k);
    }
    CHECK(j_integral(m, 0.8).value < 0.0);
  }

  TEST_CASE("admissible scan") {
    const MeanFlow& m = testing::mach3();
    std::vector<double> crs;
    for (int k = 0; k <= 40; ++k) crs.push_back(0.78 + 1e-3 * k);
    AdmissibleReport r = admissible_set_scan(m, crs);
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].first == doctest::Approx(0.78));
    CHECK(r.intervals[0].second == doctest::Approx(0.82));
    for (const auto& s : r.samples) CHECK(s.admissible);
    CHECK_THROWS_AS(admissible_set_scan(m, {0.7, 0.71}), DomainError);
    CHECK_THROWS_AS(admissible_set_scan(m, {0.71, 0.7}), DomainError);
  }

  TEST_CASE("intervals never leave the mode window") {
    const MeanFlow& m = testing::mach3();
    std::vector<double> crs;
    for (int k = 0; k <= 20; ++k) crs.push_back(0.655 + 1e-3 * k);
    AdmissibleReport r = admissible_set_scan(m, crs);
    for (auto [a, b] : r.intervals) {
      CHECK(a >= 2.0 / 3.0);
      CHECK(b <= 1.0);
    }
    for (const auto& s : r.samples)
      if (s.cr <= 2.0 / 3.0) CHECK_FALSE(s.admissible);
  }

  TEST_CASE("context quantities") {
    const DispersionContext& c = ctx08();
    double w = c.supersonic_weight();
    CHECK(w == doctest::Approx(0.501798320330).epsilon(1e-10));
    CHECK(c.alpha_min() == doctest::Approx(2.0 / 3.0 * std::sqrt(8.0) / w));
    CHECK(c.alpha_cap() == doctest::Approx(12.0 * std::log(10.0) / c.w0_at(*c.turning().yc)));
    CHECK(c.chi(0.5 * (c.window().y1s + c.window().y2s)) == 1.0);
    CHECK(c.chi(0.0) == 0.0);
    for (double a : {12.0, 25.0, 50.0}) CHECK(std::abs(c.theta(a) - c.quad_theta(a)) <= 1e-8);
    CriticalWindow bad = c.window();
    bad.y1s = *c.turning().yc + 0.1;
    CHECK_THROWS_AS(DispersionContext(testing::mach3(), 0.8, bad), DomainError);
  }

  TEST_CASE("real roots are spaced by pi / w(Y0)") {
    const auto& r = roots_10_35();
    REQUIRE(r.size() == 4);
    CHECK(r[0].alpha == doctest::Approx(14.157624391).epsilon(1e-8));
    double w = ctx08().supersonic_weight();
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(std::abs(w * (r[i].alpha - r[i - 1].alpha) - kPi) <= 0.15 * kPi);
    for (const auto& x : r) {
      CHECK(x.residual <= 1e-6 * x.scale);
      CHECK_FALSE(x.flagged);
      CHECK(std::abs(x.theta - ctx08().quad_theta(x.alpha)) <= 1e-8);
    }
    // Roots alternate in the sign of cos Theta.
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].cos_sign == -r[i - 1].cos_sign);
  }

  TEST_CASE("ten periods of tan hold ten roots") {
    double w = ctx08().supersonic_weight();
    double lo = 10.0, hi = lo + 10.0 * kPi / w;
    auto r = real_dispersion_roots(ctx08(), lo, hi);
    CHECK(r.size() >= 9);
    CHECK(r.size() <= 11);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].alpha > r[i - 1].alpha);
  }

  TEST_CASE("D changes sign at every root") {
    for (const auto& x : roots_10_35()) {
      double a = ctx08().value(x.alpha - 1e-3), b = ctx08().value(x.alpha + 1e-3);
      CHECK(a * b < 0.0);
    }
  }

  TEST_CASE("selection") {
    auto r = synthetic({1, -1, 1, -1, 1, -1});
    auto p = select_unstable_subsequence(r, 1), n = select_unstable_subsequence(r, -1);
    CHECK(p == std::vector<std::size_t>{0, 2, 4});
    CHECK(n == std::vector<std::size_t>{1, 3, 5});
    auto f = synthetic({1, -1, 1, -1, 1, -1}, {false, false, true});
    CHECK(select_unstable_subsequence(f, 1) == std::vector<std::size_t>{0, 4});
    CHECK_THROWS_AS(select_unstable_subsequence(synthetic({1, -1, 1}), 1), DomainError);
    CHECK_THROWS_AS(select_unstable_subsequence(r, 0), DomainError);
    CHECK_THROWS_AS(select_unstable_subsequence(synthetic({1, 1, 1, -1}), -1), NumericalError);
  }

  TEST_CASE("selection partitions and is idempotent") {
    auto r = synthetic({1, 1, -1, 1, -1, -1, 1, 1, -1}, {false, false, false, true});
    auto p = select_unstable_subsequence(r, 1), n = select_unstable_subsequence(r, -1);
    std::vector<int> seen(r.size(), 0);
    for (auto i : p) ++seen[i];
    for (auto i : n) ++seen[i];
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(seen[i] == (r[i].flagged ? 0 : 1));
    std::vector<DispersionRoot> sub;
    for (auto i : p) sub.push_back(r[i]);
    auto again = select_unstable_subsequence(sub, 1);
    CHECK(again.size() == sub.size());
  }

  TEST_CASE("spacing statistics") {
    SpacingStats s = spacing_stats({1.0, 2.0, 4.0}, 0.5);
    CHECK(s.count == 2);
    CHECK(s.mean == doctest::Approx(0.75));
    CHECK(s.min == doctest::Approx(0.5));
    CHECK(s.max == doctest::Approx(1.0));
    CHECK(spacing_stats({1.0}, 1.0).count == 0);
  }

  TEST_CASE("growth fit recovers a synthetic law") {
    std::vector<std::pair<double, double>> pts;
    for (double a : {10.0, 16.0, 23.0, 31.0, 40.0}) pts.emplace_back(a, std::exp(2.0 - 3.0 * std::log(a) - a));
    GrowthFit g = growth_rate_fit(pts);
    CHECK(g.s == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.p == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(g.b == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(g.r2 == doctest::Approx(1.0));
    pts.pop_back();
    pts.pop_back();
    CHECK_THROWS_AS(growth_rate_fit(pts), DomainError);
  }

  TEST_CASE("tanh profile near the sonic limit") {
    BaseFlow t = tanh_profile(20.0, 2000);
    MeanFlow m(t, 1.01);
    std::vector<double> crs;
    for (int k = 0; k <= 10; ++k) crs.push_back(0.95 + 1e-3 * k);
    AdmissibleReport r;
    CHECK_NOTHROW(r = admissible_set_scan(m, crs));
    CHECK(r.samples.size() == crs.size());
    CHECK(r.intervals.empty());
    for (const auto& s : r.samples) {
      CHECK_FALSE(s.in_domain);
      CHECK_FALSE(s.admissible);
    }
  }
}
