#pragma once

// Reference implementations that share no code with the library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace oracle {

// Lanczos approximation, g = 7, n = 9; about 15 digits for x > 0.5.
inline double lanczos_gamma(double x) {
  static constexpr double kCoeffs[] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  x -= 1.0;
  double a = kCoeffs[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += kCoeffs[i] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// ln((n-1)!) as a plain sum of logarithms.
inline double log_factorial_minus_one(unsigned n) {
  long double s = 0.0L;
  for (unsigned j = 2; j < n; ++j) s += std::log(static_cast<long double>(j));
  return static_cast<double>(s);
}

// ln Gamma(m + 1/2) = ln sqrt(pi) + sum_{j=1..m} ln(j - 1/2).
inline double log_gamma_half(unsigned m) {
  long double s = 0.5L * std::log(std::numbers::pi_v<long double>);
  for (unsigned j = 1; j <= m; ++j) s += std::log(j - 0.5L);
  return static_cast<double>(s);
}

// binom(2n, n) exactly; n <= 33.
inline std::uint64_t central_binomial(unsigned n) {
  std::uint64_t b = 1;
  for (unsigned j = 1; j <= n; ++j) b = b * (n + j) / j;
  return b;
}

inline std::mt19937_64 rng(std::uint64_t seed = 0x5eed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// I to 30 digits, computed offline in multiple precision from the defining integral.
inline constexpr double kI = 0.666377114268833856398658210788;

}  // namespace oracle
