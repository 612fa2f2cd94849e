#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "grverify/special_fn.hpp"
#include "oracles.hpp"

using grverify::central_binomial_ratio;
using grverify::log_gamma;
using grverify::pochhammer_half;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gamma on the integer and half-integer lattice", "[special_fn]") {
  CHECK(grverify::gamma(1.0) == 1.0);
  CHECK(grverify::gamma(5.0) == 24.0);
  CHECK_THAT(grverify::gamma(0.5), WithinRel(std::sqrt(std::numbers::pi), 1e-16));
  CHECK_THAT(grverify::gamma(2.5), WithinRel(0.75 * std::sqrt(std::numbers::pi), 1e-16));

  double factorial = 1.0;
  for (int n = 1; n <= 25; ++n) {
    CHECK_THAT(grverify::gamma(n), WithinRel(factorial, 1e-15));
    factorial *= n;
  }
  for (int twice = 1; twice <= 80; twice += 2) {
    const double x = 0.5 * twice;
    CHECK_THAT(grverify::gamma(x), WithinRel(oracle::lanczos_gamma(x), 1e-13));
  }
}

TEST_CASE("gamma off the lattice agrees with the Lanczos oracle", "[special_fn]") {
  for (double x : {0.1, 0.3, 0.77, 1.3, 2.7, 6.02, 10.1, 33.3, 99.9}) {
    CHECK_THAT(grverify::gamma(x), WithinRel(oracle::lanczos_gamma(x), 1e-12));
  }
}

TEST_CASE("gamma domain and overflow", "[special_fn]") {
  CHECK_THROWS_AS(grverify::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(grverify::gamma(-1.0), std::domain_error);
  CHECK_THROWS_AS(grverify::gamma(-0.5), std::domain_error);
  CHECK_THROWS_AS(grverify::gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(grverify::gamma(171.7), std::overflow_error);
  CHECK(std::isfinite(grverify::gamma(171.5)));
  CHECK(std::isfinite(grverify::gamma(171.6)));
}

TEST_CASE("log_gamma at integers is a sum of logarithms", "[special_fn]") {
  for (unsigned n : {1u, 2u, 3u, 10u, 15u, 16u, 50u, 170u, 171u, 172u, 500u, 3000u}) {
    CHECK_THAT(log_gamma(n), WithinAbs(oracle::log_factorial_minus_one(n),
                                       1e-15 * std::max(1.0, oracle::log_factorial_minus_one(n))));
  }
}

TEST_CASE("log_gamma at half-integers", "[special_fn]") {
  for (unsigned m : {0u, 1u, 7u, 14u, 15u, 40u, 200u, 1000u}) {
    const double expect = oracle::log_gamma_half(m);
    CHECK_THAT(log_gamma(m + 0.5), WithinAbs(expect, 2e-15 * std::max(1.0, std::abs(expect))));
  }
}

TEST_CASE("log_gamma off the lattice", "[special_fn]") {
  for (double x : {0.3, 1.7, 7.7, 14.99}) {
    CHECK_THAT(log_gamma(x), WithinAbs(std::log(oracle::lanczos_gamma(x)), 1e-13));
  }
  // The Stirling branch, against the C library (single-threaded here).
  for (double x : {15.01, 123.456, 1000.25, 1e5 + 0.1, 1e12 + 0.3}) {
    CHECK_THAT(log_gamma(x), WithinRel(std::lgamma(x), 1e-14));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK(std::isinf(log_gamma(std::numeric_limits<double>::infinity())));
}

TEST_CASE("recurrences hold for random arguments", "[special_fn][property]") {
  auto g = oracle::rng(11);
  for (int i = 0; i < 500; ++i) {
    const double x = oracle::uniform(g, 0.05, 40.0);
    CHECK_THAT(grverify::gamma(x + 1.0), WithinRel(x * grverify::gamma(x), 1e-13));
    CHECK_THAT(log_gamma(x + 1.0) - log_gamma(x), WithinAbs(std::log(x), 1e-12));
  }
}

TEST_CASE("pochhammer_half is a ratio of gammas", "[special_fn]") {
  CHECK(pochhammer_half(0, 0) == 1.0);
  CHECK(pochhammer_half(7, 0) == 1.0);
  CHECK(pochhammer_half(0, 1) == 0.5);
  CHECK(pochhammer_half(0, 3) == 0.5 * 1.5 * 2.5);
  for (unsigned n = 0; n < 12; ++n) {
    for (unsigned k = 0; k < 12; ++k) {
      const double s = 0.5 * (n + 1.0);
      CHECK_THAT(pochhammer_half(n, k),
                 WithinRel(oracle::lanczos_gamma(s + k) / oracle::lanczos_gamma(s), 1e-12));
    }
  }
}

TEST_CASE("central_binomial_ratio against exact binomials", "[special_fn]") {
  CHECK(central_binomial_ratio(0) == 1.0);
  CHECK(central_binomial_ratio(1) == 0.5);
  CHECK(central_binomial_ratio(2) == 0.375);
  for (unsigned n = 0; n <= 30; ++n) {
    const double exact = static_cast<double>(oracle::central_binomial(n)) / std::ldexp(1.0, 2 * n);
    CHECK_THAT(central_binomial_ratio(n), WithinRel(exact, 1e-14));
  }
}

TEST_CASE("central_binomial_ratio decreases like 1/sqrt(pi n)", "[special_fn][property]") {
  double previous = central_binomial_ratio(0);
  for (unsigned n = 1; n <= 2000; ++n) {
    const double c = central_binomial_ratio(n);
    CHECK(c < previous);
    previous = c;
  }
  const double n = 1e6;
  CHECK_THAT(central_binomial_ratio(1000000) * std::sqrt(std::numbers::pi * n),
             WithinAbs(1.0 - 1.0 / (8.0 * n), 1e-9));
}
