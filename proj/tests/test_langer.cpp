#include <cmath>

#include "doctest.h"
#include "macksolve/langer.hpp"
#include "support.hpp"

using namespace macksolve;

namespace {

struct Setup {
  TurningData td;
  CriticalWindow win;
  LangerOptions opt;
  Setup() {
    td = turning_point(testing::mach3(), 0.8);
    win = default_window(testing::mach3(), td);
    opt.delta0 = win.delta0;
    opt.y2s = win.y2s;
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

}  // namespace

TEST_SUITE("langer") {
  TEST_CASE("smooth step") {
    CHECK(smooth_step(-0.5)[0] == 1.0);
    CHECK(smooth_step(1.5)[0] == 0.0);
    CHECK(smooth_step(0.5)[0] == doctest::Approx(0.5).epsilon(1e-14));
    for (double t : {0.2, 0.6, 0.9}) {
      double h = 1e-4;
      double d = (smooth_step(t + h)[0] - smooth_step(t - h)[0]) / (2 * h);
      CHECK(std::abs(d - smooth_step(t)[1]) <= 1e-6);
    }
  }

  TEST_CASE("eta vanishes at the turning point with unit slope scale") {
    const Setup& s = setup();
    LangerMap L(testing::mach3(), s.td, cd(0.8, 1e-6), 20.0, s.opt);
    EtaJet j = L.jet(s.td.y0);
    CHECK(std::abs(j.eta) <= 1e-14);
    // eta'(Y0)^3 = 1 follows from the identity at Y0.
    CHECK(std::abs(j.d1 - 1.0) <= 1e-8);
  }

  TEST_CASE("identity F~'(Y0) eta eta'^2 = F~ across the grid") {
    const Setup& s = setup();
    for (double ci : {0.0, 1e-6, 1e-3}) {
      LangerMap L(testing::mach3(), s.td, cd(0.8, ci), 20.0, s.opt);
      double worst = 0.0;
      for (int k = 0; k <= 2000; ++k) {
        double y = 0.01 * k;
        EtaJet j = L.jet(y);
        worst = std::max(worst, std::abs(L.dfr0() * j.eta * j.d1 * j.d1 - L.ftilde(y)[0]));
      }
      CHECK_MESSAGE(worst <= 1e-8, "c_i = " << ci);
    }
  }

  TEST_CASE("jet derivatives match differences of eta") {
    const Setup& s = setup();
    LangerMap L(testing::mach3(), s.td, cd(0.8, 1e-3), 20.0, s.opt);
    auto eta = [&](double y) { return L.eta(y); };
    double h0 = L.local_halfwidth();
    for (double y : {0.5, s.td.y0 - 0.5 * h0, s.td.y0 + 0.99 * h0, s.td.y0 + 1.01 * h0, 2.4, 6.0}) {
      EtaJet j = L.jet(y);
      CHECK(std::abs(testing::d1_5pt(eta, y, 1e-3) - j.d1) <= 1e-8);
      CHECK(std::abs(testing::d2_5pt(eta, y, 1e-3) - j.d2) <= 1e-5);
    }
  }

  TEST_CASE("wall value of the Airy phase equals alpha w(Y0)") {
    const Setup& s = setup();
    double w = supersonic_weight(testing::mach3(), s.td);
    for (double alpha : {10.0, 20.0, 40.0}) {
      LangerMap L(testing::mach3(), s.td, cd(0.8, 0.0), alpha, s.opt);
      double k = L.kappa();
      double lhs = 2.0 / 3.0 * std::pow(-k * L.eta(0.0).real(), 1.5);
      CHECK(std::abs(lhs - alpha * w) <= 1e-8);
      CHECK(std::abs(L.supersonic_weight() - w) <= 1e-10);
      CHECK(k == doctest::Approx(std::cbrt(alpha * alpha * s.td.dfr0)).epsilon(1e-15));
    }
  }

  TEST_CASE("subsonic phase weight") {
    const Setup& s = setup();
    LangerMap L(testing::mach3(), s.td, cd(0.8, 0.0), 20.0, s.opt);
    CHECK(L.w0(s.td.y0 - 0.2) == 0.0);
    CHECK(std::abs(L.w0(s.td.y0)) <= 1e-14);
    double prev = 0.0;
    for (double y = s.td.y0 + 0.1; y < 19.0; y += 0.7) {
      double w = L.w0(y);
      CHECK(w > prev);
      prev = w;
      CHECK(std::abs(w - subsonic_weight(testing::mach3(), s.td, y)) <= 1e-8);
      cd ke = L.kappa() * L.eta(y);
      CHECK(testing::rel(L.zeta(y), 2.0 / 3.0 * std::pow(ke, 1.5)) <= 1e-10);
      CHECK(std::abs(L.zeta(y).real() - 20.0 * w) <= 1e-8 * 20.0 * w);
    }
  }

  TEST_CASE("eta does not depend on alpha") {
    const Setup& s = setup();
    LangerMap L(testing::mach3(), s.td, cd(0.8, 1e-4), 10.0, s.opt);
    LangerMap M = L.with_alpha(35.0);
    CHECK(M.alpha() == 35.0);
    for (double y : {0.3, 2.0, 9.0}) CHECK(L.eta(y) == M.eta(y));
  }

  TEST_CASE("Q1 is real at a real phase speed and refused at the critical point") {
    const Setup& s = setup();
    LangerMap L(testing::mach3(), s.td, cd(0.8, 0.0), 20.0, s.opt);
    for (double y : {0.2, 1.0, s.td.y0 + 0.3, 6.0}) CHECK(std::abs(L.q1(y).imag()) <= 1e-12 * std::abs(L.q1(y)));
    CHECK_THROWS_AS(L.q1(*s.td.yc), DomainError);
    CHECK_THROWS_AS(L.q1(*s.td.yc + 0.5 * L.guard()), DomainError);
    CHECK_NOTHROW(L.q1(*s.td.yc + 2.0 * L.guard()));
  }

  TEST_CASE("Q~1 is negative at the wall near the lower end of the J domain") {
    const MeanFlow& m = testing::mach3();
    double cr = std::sqrt(m.t0(0.0)) / m.mach() + 0.01;
    TurningData td = turning_point_y0(m, cr);
    REQUIRE(td.y0 > 0.0);
    LangerMap L(m, td, cd(cr, 0.0), 1.0, LangerOptions{});
    CHECK(q1_tilde(L, 0.0) < 0.0);
  }

  TEST_CASE("Q~1 domain") {
    const Setup& s = setup();
    LangerMap L(testing::mach3(), s.td, cd(0.8, 0.0), 1.0, LangerOptions{});
    CHECK(std::isfinite(q1_tilde(L, 0.5 * s.td.y0)));
    CHECK_THROWS_AS(q1_tilde(L, s.td.y0 + 0.1), DomainError);
    LangerMap C(testing::mach3(), s.td, cd(0.8, 1e-3), 1.0, s.opt);
    CHECK_THROWS_AS(q1_tilde(C, 0.1), DomainError);
  }
}
