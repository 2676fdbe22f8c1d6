#include <cmath>

#include "doctest.h"
#include "macksolve/quadrature.hpp"

using namespace macksolve;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {4, 16, 20}) {
      auto f = [n](double x) -> cd { return std::pow(x, 2 * n - 1) + std::pow(x, 2 * n - 2); };
      double exact = 1.0 / (2 * n - 1) * (std::pow(2.0, 2 * n - 1) - std::pow(-1.0, 2 * n - 1));
      exact += (std::pow(2.0, 2 * n) - std::pow(-1.0, 2 * n)) / (2 * n);
      CHECK(std::abs(integrate_gl(f, -1.0, 2.0, n).real() - exact) <= 1e-12 * std::abs(exact));
    }
  }

  TEST_CASE("weights sum to two") {
    for (int n : {7, 16, 60}) {
      double s = 0.0;
      for (double w : gauss_legendre(n).w) s += w;
      CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    }
  }

  TEST_CASE("adaptive rule handles endpoint derivative singularities") {
    auto f = [](double x) -> cd { return std::sqrt(x) + x * std::log(x); };
    QuadResult r = integrate_adaptive(f, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r.value.real() - (2.0 / 3.0 - 0.25)) <= 1e-11);
  }

  TEST_CASE("an unbounded integrand exhausts the depth limit") {
    auto f = [](double x) -> cd { return 1.0 / std::sqrt(x); };
    CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 1e-12), NumericalError);
  }

  TEST_CASE("adaptive rule on an oscillatory complex integrand") {
    auto f = [](double x) -> cd { return std::exp(cd(0.0, 40.0 * x)); };
    cd exact = (std::exp(cd(0.0, 40.0)) - 1.0) / cd(0.0, 40.0);
    QuadResult r = integrate_adaptive(f, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r.value - exact) <= 1e-12);
  }

  TEST_CASE("rounding noise does not stall refinement") {
    // Integrand with relative noise near 1e-13, asked for 1e-15.
    auto f = [](double x) -> cd { return std::exp(x) * (1.0 + 1e-13 * std::sin(1e7 * x)); };
    QuadResult r = integrate_adaptive(f, 0.0, 1.0, 1e-15);
    CHECK(std::abs(r.value.real() - (std::exp(1.0) - 1.0)) <= 1e-11);
  }
}
