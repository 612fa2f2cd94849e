#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "grverify/quadrature.hpp"
#include "grverify/series_forms.hpp"
#include "oracles.hpp"

using namespace grverify;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// inner(n) = (1/Gamma(s)) int_0^inf t^{s-1} e^{-t} U(t) dt = int_0^1 g(u)^{-s} du,
// g(u) = 1 + 16/3 u^2 (1-u)^2, s = (n+1)/2.
double inner_by_quadrature(unsigned n) {
  const double s = 0.5 * (n + 1.0);
  return integrate(
             [s](double u) {
               const double w = u * (1.0 - u);
               return std::pow(1.0 + 16.0 / 3.0 * w * w, -s);
             },
             Interval(0.0, 1.0), {1e-15})
      .value;
}

// Unsigned Hankel term from the exact binomial and the Lanczos gamma.
double hankel_term_oracle(unsigned n, double t) {
  const double c = static_cast<double>(oracle::central_binomial(n)) / std::ldexp(1.0, 2 * n);
  return c * std::pow(t, 0.5 * (n - 1.0)) / oracle::lanczos_gamma(0.5 * (n + 1.0));
}

// Signed inner term from C-library log-gamma (tests run single-threaded).
double inner_term_oracle(unsigned n, unsigned k) {
  const double s = 0.5 * (n + 1.0);
  const double lg = std::lgamma(s + k) - std::lgamma(s) - std::lgamma(k + 1.0) +
                    k * std::log(16.0 / 3.0) + 2.0 * std::lgamma(2.0 * k + 1.0) -
                    std::lgamma(4.0 * k + 2.0);
  return (k % 2 ? -1.0 : 1.0) * std::exp(lg);
}

}  // namespace

TEST_CASE("U series against its integral", "[series_forms]") {
  CHECK(u_series(0.0).value == 1.0);
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto s = u_series(t);
    const auto q = u_integral(t);
    CHECK(s.converged);
    CHECK(q.converged);
    CHECK_THAT(s.value, WithinAbs(q.value, 1e-11));
  }
  // 1 - (16/3) B(3,3) t + (16/3)^2 B(5,5) t^2 / 2 = 1 - 16t/90 + 256t^2/11340.
  CHECK_THAT(u_series(1e-6).value, WithinAbs(1.0 - 16e-6 / 90.0 + 256e-12 / 11340.0, 1e-16));
}

TEST_CASE("U is a decreasing function in (0, 1] with t^{-1/2} decay", "[series_forms]") {
  double previous = 1.0;
  for (double t = 0.05; t <= 200.0; t *= 1.3) {
    const double u = u_value(t).value;
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    CHECK(u < previous);
    previous = u;
  }
  // By symmetry U(t) = 2 int_0^{1/2}, and (1-u)^2 >= 1/4 there, so U(t) <= sqrt(3 pi)/(2 sqrt t).
  // sqrt(3 pi)/(4 sqrt t) is the large-t limit, approached from above (offline values).
  const double c = std::sqrt(3.0 * std::numbers::pi) / 4.0;
  double scaled_prev = kInfinity;
  for (double t : {2.0, 10.0, 100.0, 1000.0, 10000.0}) {
    const double scaled = u_integral(t).value * std::sqrt(t);
    CHECK(scaled <= 2.0 * c);
    CHECK(scaled > c);
    CHECK(scaled < scaled_prev);
    scaled_prev = scaled;
  }
  CHECK_THAT(u_integral(100.0).value * 10.0, WithinRel(0.81020273619268993, 1e-11));
  CHECK_THAT(u_integral(1e4).value * 100.0, WithinRel(0.77128892018729201, 1e-11));
}

TEST_CASE("Hankel terms", "[series_forms]") {
  CHECK_THAT(hankel_term(0, 1.0), WithinRel(1.0 / std::sqrt(std::numbers::pi), 1e-15));
  CHECK_THAT(hankel_term(1, 3.0), WithinRel(0.5, 1e-15));
  for (unsigned n = 0; n <= 30; ++n) {
    for (double t : {0.3, 1.0, 4.0, 9.0}) {
      CHECK_THAT(hankel_term(n, t), WithinRel(hankel_term_oracle(n, t), 1e-12));
    }
  }
  // Terms peak near n = 2t; at t = 4 the peak is 2.234375.
  double biggest = 0.0;
  for (unsigned n = 0; n < 40; ++n) biggest = std::max(biggest, hankel_term(n, 4.0));
  CHECK_THAT(biggest, WithinRel(2.234375, 1e-12));
  CHECK_THROWS_AS(hankel_term(3, 0.0), std::domain_error);
}

TEST_CASE("Hankel series reference values", "[series_forms]") {
  CHECK_THAT(hankel_series(0.5).value, WithinAbs(0.4915627874458535, 1e-14));
  CHECK_THAT(hankel_series(1.0).value, WithinAbs(0.3019691224644276, 1e-14));
  CHECK_THAT(hankel_series(2.0).value, WithinAbs(0.1816655224962660, 1e-14));
  CHECK_THAT(hankel_series(5.0).value, WithinAbs(0.0907107517551922, 1e-13));
  for (double t : {0.5, 1.0, 2.0, 5.0, 8.0}) {
    const auto s = hankel_series(t);
    CHECK(s.converged);
    CHECK(s.roundoff < 1e-12);
  }
  CHECK_THROWS_AS(hankel_series(60.0), std::overflow_error);
  CHECK_THROWS_AS(hankel_series(0.0), std::domain_error);
}

TEST_CASE("hankel_value switches to the contour above the series range", "[series_forms]") {
  const double t = kHankelSeriesSwitch;
  const double below = hankel_value(t).value;
  const double above = hankel_value(std::nextafter(t, 100.0)).value;
  CHECK_THAT(above, WithinAbs(below, 1e-11));
  double previous = below;
  for (double s : {10.0, 15.0, 25.0, 40.0}) {
    const auto v = hankel_value(s);
    CHECK(v.converged);
    CHECK(v.value > 0.0);
    CHECK(v.value < previous);
    previous = v.value;
  }
}

TEST_CASE("inner terms, direct and log-space", "[series_forms]") {
  CHECK(inner_k_term(0, 0) == 1.0);
  CHECK_THAT(inner_k_term(0, 1), WithinRel(-4.0 / 45.0, 1e-15));
  for (unsigned n : {0u, 1u, 5u, 20u, 40u, 58u, 59u, 60u, 61u, 100u}) {
    for (unsigned k : {0u, 1u, 2u, 10u, 25u, 30u, 31u, 60u}) {
      CHECK_THAT(inner_k_term(n, k), WithinRel(inner_term_oracle(n, k), 1e-11));
    }
  }
}

TEST_CASE("inner sums against quadrature of the generating integral", "[series_forms]") {
  for (unsigned n : {0u, 1u, 2u, 3u, 7u, 15u, 39u, 80u}) {
    const auto r = inner_k_sum(n);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(inner_by_quadrature(n), 1e-14));
    CHECK(r.tail_estimate + r.roundoff < 1e-13);
    // The literal alternating sum agrees up to its own cancellation error. Past
    // n + 2k = 60 its terms come from log-gamma differences of size ~100, each
    // carrying that many ulps of relative error.
    double direct = 0.0;
    double magnitude = 0.0;
    for (unsigned k = 0;; ++k) {
      const double term = inner_k_term(n, k);
      direct += term;
      magnitude += std::abs(term);
      if (k > n && std::abs(term) < 1e-20) break;
    }
    CHECK_THAT(r.value, WithinAbs(direct, 1e-14 + 64.0 * kEps * magnitude));
  }
}

TEST_CASE("outer terms alternate and shrink", "[series_forms][property]") {
  double previous = 2.0;
  for (unsigned n = 0; n < 80; ++n) {
    const double a = outer_term(n).value;
    CHECK((n % 2 == 0 ? a > 0.0 : a < 0.0));
    CHECK(std::abs(a) < previous);
    previous = std::abs(a);
  }
}

TEST_CASE("partial sums bracket I", "[series_forms][property]") {
  for (unsigned n = 0; n < 60; ++n) {
    const double s = double_series_partial_sum(n);
    if (n % 2 == 0) {
      CHECK(s > oracle::kI);
    } else {
      CHECK(s < oracle::kI);
    }
  }
}

TEST_CASE("double series for I", "[series_forms]") {
  const auto acc = double_series_I();
  CHECK(acc.converged);
  CHECK_THAT(acc.value, WithinAbs(oracle::kI, 1e-5));
  CHECK_THAT(acc.value, WithinAbs(oracle::kI, 1e-12));
  CHECK(acc.tail_estimate < 1e-12);

  SeriesConfig plain;
  plain.accelerate = false;
  plain.max_terms = 200;
  const auto avg = double_series_I(plain);
  CHECK(std::abs(avg.value - oracle::kI) <= avg.tail_estimate);
  CHECK_FALSE(avg.converged);

  SeriesConfig bad;
  bad.max_terms = 2;
  CHECK_THROWS_AS(double_series_I(bad), std::invalid_argument);
  bad = {};
  bad.tail_tol = 0.0;
  CHECK_THROWS_AS(u_series(1.0, bad), std::invalid_argument);
}
