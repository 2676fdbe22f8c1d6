#include <array>
#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace macksolve;

namespace {

// Classical RK4 with a fixed step on f''' = -f f''/2; returns (f, f', f'') at y_end.
std::array<double, 3> rk4_blasius(double s, double y_end, int steps) {
  std::array<double, 3> y{0.0, 0.0, s};
  auto rhs = [](const std::array<double, 3>& v) { return std::array<double, 3>{v[1], v[2], -0.5 * v[0] * v[2]}; };
  double h = y_end / steps;
  for (int i = 0; i < steps; ++i) {
    auto k1 = rhs(y);
    std::array<double, 3> t;
    for (int j = 0; j < 3; ++j) t[j] = y[j] + 0.5 * h * k1[j];
    auto k2 = rhs(t);
    for (int j = 0; j < 3; ++j) t[j] = y[j] + 0.5 * h * k2[j];
    auto k3 = rhs(t);
    for (int j = 0; j < 3; ++j) t[j] = y[j] + h * k3[j];
    auto k4 = rhs(t);
    for (int j = 0; j < 3; ++j) y[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return y;
}

double oracle_shear() {
  double lo = 0.2, hi = 0.5;
  for (int k = 0; k < 60; ++k) {
    double mid = 0.5 * (lo + hi);
    (rk4_blasius(mid, 20.0, 20000)[1] < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BaseFlow sin_table() {
  std::vector<double> g, u, du, d2, d3;
  for (int j = 0; j <= 100; ++j) {
    double y = 0.1 * j;
    g.push_back(y);
    u.push_back(std::sin(y));
    du.push_back(std::cos(y));
    d2.push_back(-std::sin(y));
    d3.push_back(-std::cos(y));
  }
  return table_profile(g, u, du, d2, d3);
}

}  // namespace

TEST_SUITE("baseflow") {
  TEST_CASE("wall shear agrees with an independent RK4 shooting oracle") {
    double s = oracle_shear();
    CHECK(std::abs(s - 0.332057) <= 1e-4);
    CHECK(std::abs(testing::blasius_flow().wall_shear - s) <= 1e-7);
  }

  TEST_CASE("profile values agree with the oracle integration") {
    double s = oracle_shear();
    const BaseFlow& f = testing::blasius_flow();
    for (double y : {0.5, 1.0, 2.5, 5.0, 8.0}) {
      auto o = rk4_blasius(s, y, static_cast<int>(y * 2000));
      ProfileJet p = f.eval(y);
      CHECK(std::abs(p.u - o[1]) <= 1e-6);
      CHECK(std::abs(p.du - o[2]) <= 1e-6);
    }
  }

  TEST_CASE("boundary values, monotonicity and positive shear") {
    const BaseFlow& f = testing::blasius_flow();
    CHECK(f.u.front() == 0.0);
    CHECK(f.u.back() >= 1.0 - 1e-6);
    for (int j = 0; j < f.size(); ++j) CHECK_MESSAGE(f.du[j] > 0.0, "node " << j);
    CHECK(check_structure_assumptions(f).all_passed());
  }

  TEST_CASE("stored derivatives satisfy the similarity equation") {
    const BaseFlow& f = testing::blasius_flow();
    double worst = 0.0;
    for (int j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(f.d2u[j] + 0.5 * f.stream[j] * f.du[j]));
    CHECK(worst <= 1e-6);
  }

  TEST_CASE("doubling the node count leaves shared nodes unchanged") {
    BaseFlow fine = blasius(20.0, 3999);
    const BaseFlow& f = testing::blasius_flow();
    double worst = 0.0;
    for (int j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(f.u[j] - fine.u[2 * j]));
    CHECK(worst <= 1e-6);
  }

  TEST_CASE("decay bound with constant 10 beyond Y = 5") {
    const BaseFlow& f = testing::blasius_flow();
    CHECK(f.decay_rate > 0.0);
    for (int j = 0; j < f.size(); ++j)
      if (f.grid[j] >= 5.0) CHECK(std::abs(f.u[j] - 1.0) <= 10.0 * std::exp(-f.decay_rate * f.grid[j]) * (1 + 1e-12));
  }

  TEST_CASE("invalid Blasius requests") {
    CHECK_THROWS_AS(blasius(10.0, 2000), DomainError);
    CHECK_THROWS_AS(blasius(20.0, 100), DomainError);
  }

  TEST_CASE("tanh profile") {
    BaseFlow t = tanh_profile(20.0, 2000);
    CHECK(t.u.front() == 0.0);
    CHECK(t.decay_rate == 2.0);
    for (int j = 0; j < t.size(); ++j) {
      double y = t.grid[j];
      CHECK(t.du[j] == doctest::Approx(1.0 / (std::cosh(y) * std::cosh(y))).epsilon(1e-14));
      CHECK(t.du[j] > 0.0);
      CHECK(std::abs(t.u[j] - 1.0) <= 2.0 * std::exp(-2.0 * y) + 2.3e-16);
    }
    CHECK(check_structure_assumptions(t).all_passed());
  }

  TEST_CASE("assumption report flags violations") {
    AssumptionReport r = check_structure_assumptions(sin_table());
    REQUIRE(r.find("monotone"));
    CHECK_FALSE(r.find("monotone")->passed);
    CHECK_FALSE(r.all_passed());

    BaseFlow shifted = testing::blasius_flow();
    for (double& v : shifted.u) v = 0.1 + 0.9 * v;
    AssumptionReport s = check_structure_assumptions(shifted);
    REQUIRE(s.find("wall"));
    CHECK_FALSE(s.find("wall")->passed);
  }

  TEST_CASE("tables are evaluated without differentiation") {
    BaseFlow s = sin_table();
    ProfileJet p = s.eval(0.55);
    CHECK(p.u == doctest::Approx(std::sin(0.55)).epsilon(1e-7));
    CHECK(p.du == doctest::Approx(std::cos(0.55)).epsilon(1e-6));
  }
}
