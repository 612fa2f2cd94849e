#pragma once

// Gamma-family scalar functions used by the series representations.
//
// Integer and half-integer arguments are the hot path: they are evaluated by
// exact recurrence from Gamma(1) and Gamma(1/2), accumulated in extended
// precision, so the series coefficients carry no approximation error.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace grverify {

/// Gamma(x) exceeds the largest finite double above this argument.
inline constexpr double kGammaOverflowThreshold = 171.62437695630272;

namespace detail {

inline constexpr long double kSqrtPiL = 1.772453850905516027298167483341145L;

// 2x is an integer and the exact product stays finite.
inline bool is_half_lattice(double x) noexcept {
  const double twice = 2.0 * x;
  return twice == std::floor(twice) && x <= kGammaOverflowThreshold;
}

// Gamma(x) for x in {1/2, 1, 3/2, ...} by running product in long double.
inline long double gamma_half_lattice(double x) noexcept {
  const long twice = static_cast<long>(2.0 * x);
  long double acc;
  long double y;
  if (twice % 2 == 0) {
    acc = 1.0L;  // Gamma(1)
    y = 1.0L;
  } else {
    acc = kSqrtPiL;  // Gamma(1/2)
    y = 0.5L;
  }
  const long double target = static_cast<long double>(x);
  while (y < target) {
    acc *= y;
    y += 1.0L;
  }
  return acc;
}

// Stirling series for ln Gamma(y), y >= 15; truncation below 1e-22.
inline double log_gamma_stirling(double y) noexcept {
  constexpr double kCoeffs[] = {
      1.0 / 12.0,          -1.0 / 360.0,           1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,           -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0,
  };
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : kCoeffs) {
    series += c * power;
    power *= inv2;
  }
  return (y - 0.5) * std::log(y) - y + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

inline void require_positive(double x, const char* who) {
  if (!(x > 0.0) || std::isnan(x)) {
    throw std::domain_error(std::string(who) + ": argument must be > 0, got " +
                            std::to_string(x));
  }
}

}  // namespace detail

/// Gamma(x) for x > 0. Throws std::domain_error for x <= 0 and
/// std::overflow_error when the result is not representable; use
/// log_gamma for large arguments.
inline double gamma(double x) {
  detail::require_positive(x, "gamma");
  if (x > kGammaOverflowThreshold) {
    throw std::overflow_error("gamma: result overflows for x = " + std::to_string(x) +
                              "; use log_gamma");
  }
  if (detail::is_half_lattice(x)) {
    return static_cast<double>(detail::gamma_half_lattice(x));
  }
  return std::tgamma(x);
}

/// ln Gamma(x) for x > 0. Reentrant (does not touch the global signgam).
inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  if (std::isinf(x)) return x;
  if (detail::is_half_lattice(x)) {
    return static_cast<double>(std::log(detail::gamma_half_lattice(x)));
  }
  constexpr double kShiftTo = 15.0;
  if (x >= kShiftTo) return detail::log_gamma_stirling(x);
  // ln Gamma(x) = ln Gamma(x + n) - ln(x (x+1) ... (x+n-1))
  long double product = 1.0L;
  double y = x;
  while (y < kShiftTo) {
    product *= y;
    y += 1.0;
  }
  return detail::log_gamma_stirling(y) - static_cast<double>(std::log(product));
}

/// Gamma((n+1)/2 + k) / Gamma((n+1)/2) as the running product
/// prod_{j<k} ((n+1)/2 + j).
inline double pochhammer_half(unsigned n, unsigned k) noexcept {
  const double base = 0.5 * (static_cast<double>(n) + 1.0);
  double acc = 1.0;
  for (unsigned j = 0; j < k; ++j) acc *= base + static_cast<double>(j);
  return acc;
}

/// binom(2n, n) / 4^n as prod_{j=1..n} (1 - 1/(2j)); never overflows.
inline double central_binomial_ratio(unsigned n) noexcept {
  double acc = 1.0;
  for (unsigned j = 1; j <= n; ++j) acc *= 1.0 - 0.5 / static_cast<double>(j);
  return acc;
}

}  // namespace grverify
