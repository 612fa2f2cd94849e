#include <catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "grverify/quadrature.hpp"
#include "oracles.hpp"

using namespace grverify;
using Catch::Matchers::WithinAbs;

TEST_CASE("Gauss-Kronrod integrates monomials exactly", "[quadrature]") {
  for (int p = 0; p <= 22; ++p) {
    const auto r = integrate([p](double x) { return std::pow(x, p); }, Interval(0.0, 1.0));
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(1.0 / (p + 1), 1e-15));
  }
}

TEST_CASE("random cubics on random intervals", "[quadrature][property]") {
  auto g = oracle::rng(3);
  for (int i = 0; i < 200; ++i) {
    const double c[4] = {oracle::uniform(g, -5, 5), oracle::uniform(g, -5, 5),
                         oracle::uniform(g, -5, 5), oracle::uniform(g, -5, 5)};
    const double a = oracle::uniform(g, -3, 3);
    const double b = a + oracle::uniform(g, 0.01, 4);
    auto prim = [&](double x) {
      return c[0] * x + c[1] * x * x / 2 + c[2] * x * x * x / 3 + c[3] * x * x * x * x / 4;
    };
    const auto r = integrate(
        [&](double x) { return c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x; },
        Interval(a, b));
    CHECK_THAT(r.value, WithinAbs(prim(b) - prim(a), 1e-11));
  }
}

TEST_CASE("smooth but sharp integrands", "[quadrature]") {
  // The integral is about 314, so the roundoff floor sits above the default 1e-12.
  const auto r = integrate([](double x) { return 1.0 / (1e-4 + x * x); }, Interval(-1.0, 1.0),
                           {.abs_tol = 1e-9});
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinAbs(2.0 / 1e-2 * std::atan(1.0 / 1e-2), 1e-9));
  const auto osc = integrate([](double x) { return std::cos(50.0 * x); }, Interval(0.0, 3.0));
  CHECK_THAT(osc.value, WithinAbs(std::sin(150.0) / 50.0, 1e-12));
  CHECK(osc.error_estimate >= std::abs(osc.value - std::sin(150.0) / 50.0));
}

TEST_CASE("inverse square root at a flagged endpoint", "[quadrature]") {
  SECTION("plain evaluator at a lower endpoint at zero") {
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); },
                             Interval(0.0, 1.0, Singular::lower));
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(2.0, 1e-12));
  }
  SECTION("endpoint-aware evaluator at an upper endpoint") {
    const auto r = integrate([](double, double, double du) { return 1.0 / std::sqrt(du); },
                             Interval(0.0, 1.0, Singular::upper));
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(2.0, 1e-12));
  }
  SECTION("both endpoints, away from zero") {
    const auto r = integrate([](double, double dl, double du) { return 1.0 / std::sqrt(dl * du); },
                             Interval(3.0, 5.0, Singular::both));
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(std::numbers::pi, 1e-12));
  }
  SECTION("distances are exact even near a non-zero endpoint") {
    // int_1^2 dx / sqrt(x - 1) = 2, with x - 1 far below the spacing of doubles near 1.
    const auto r = integrate([](double, double dl, double) { return 1.0 / std::sqrt(dl); },
                             Interval(1.0, 2.0, Singular::lower));
    CHECK_THAT(r.value, WithinAbs(2.0, 1e-13));
  }
}

TEST_CASE("semi-infinite ranges", "[quadrature]") {
  CHECK_THAT(integrate([](double x) { return std::exp(-x); }, Interval(0.0, kInfinity)).value,
             WithinAbs(1.0, 1e-13));
  CHECK_THAT(
      integrate([](double x) { return 1.0 / (1.0 + x * x); }, Interval(0.0, kInfinity)).value,
      WithinAbs(0.5 * std::numbers::pi, 1e-12));
  CHECK_THAT(integrate([](double x) { return std::pow(x, -1.5); }, Interval(1.0, kInfinity)).value,
             WithinAbs(2.0, 1e-12));
  // Gamma(1/2) = int_0^inf e^{-x} / sqrt(x)
  CHECK_THAT(
      integrate([](double x) { return std::exp(-x) / std::sqrt(x); }, Interval(0.0, kInfinity))
          .value,
      WithinAbs(std::sqrt(std::numbers::pi), 1e-11));
}

TEST_CASE("complex-valued integrands", "[quadrature]") {
  const auto circle = integrate_complex([](double t) { return std::exp(Complex(0.0, t)); },
                                        Interval(0.0, 2.0 * std::numbers::pi));
  CHECK(std::abs(circle.value) < 1e-14);
  const auto r = integrate_complex([](double x) { return std::exp(Complex(0.0, x)); },
                                   Interval(0.0, 1.0));
  const Complex expect = (std::exp(Complex(0.0, 1.0)) - 1.0) / Complex(0.0, 1.0);
  CHECK(std::abs(r.value - expect) < 1e-15);
}

TEST_CASE("invalid intervals and configurations", "[quadrature]") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(-kInfinity, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.0, kInfinity, Singular::upper), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);

  QuadratureConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate([](double x) { return x; }, Interval(0.0, 1.0), bad),
                  std::invalid_argument);
  bad = {};
  bad.max_evals = 3;
  CHECK_THROWS_AS(integrate([](double x) { return x; }, Interval(0.0, 1.0), bad),
                  std::invalid_argument);
}

TEST_CASE("non-finite values away from a flagged endpoint are errors", "[quadrature]") {
  auto f = [](double x) { return x > 0.3 && x < 0.4 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
  CHECK_THROWS_AS(integrate(f, Interval(0.0, 1.0)), EvaluationError);
  CHECK_THROWS_AS(integrate(f, Interval(0.0, 1.0, Singular::lower)), EvaluationError);
  // Unflagged singularity at the endpoint itself is never sampled by Gauss-Kronrod,
  // so it fails by budget rather than by exception.
  QuadratureConfig small;
  small.max_evals = 300;
  const auto r = integrate([](double x) { return 1.0 / x; }, Interval(0.0, 1.0), small);
  CHECK_FALSE(r.converged);
}

TEST_CASE("budget and deadline stop refinement", "[quadrature]") {
  QuadratureConfig cfg;
  cfg.max_evals = 15;
  cfg.abs_tol = 1e-15;
  const auto r = integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, Interval(0.0, 1.0),
                           cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.evals <= 15);

  QuadratureConfig late;
  late.deadline = Clock::now() - std::chrono::seconds(1);
  const auto d = integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, Interval(0.0, 1.0),
                           late);
  CHECK_FALSE(d.converged);
  const auto de = integrate([](double x) { return 1.0 / std::sqrt(x); },
                            Interval(0.0, 1.0, Singular::lower), late);
  CHECK_FALSE(de.converged);
}

TEST_CASE("error estimates bound the actual error", "[quadrature][property]") {
  auto g = oracle::rng(5);
  for (int i = 0; i < 50; ++i) {
    const double w = oracle::uniform(g, 1.0, 30.0);
    const double b = oracle::uniform(g, 0.5, 4.0);
    const auto r = integrate([w](double x) { return std::cos(w * x); }, Interval(0.0, b));
    CHECK(r.converged);
    CHECK(std::abs(r.value - std::sin(w * b) / w) <= std::max(r.error_estimate, 1e-15));
  }
}
