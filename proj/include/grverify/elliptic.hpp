#pragma once

// Legendre elliptic integrals through Carlson's symmetric forms.
//
//   F(phi, k)   = \int_0^phi dtheta / sqrt(1 - k^2 sin^2 theta)
//   K(k)        = F(pi/2, k)
//   Pi(n, k)    = \int_0^1 dx / ((1 - n x^2) sqrt((1 - x^2)(1 - k^2 x^2)))
//
// The characteristic n multiplies x^2 (equivalently sin^2 theta) directly.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace grverify {

/// Elliptic modulus, 0 <= k < 1.
class Modulus {
 public:
  explicit Modulus(double k) : k_(k) {
    if (!(k >= 0.0 && k < 1.0)) {
      throw std::domain_error("Modulus: requires 0 <= k < 1, got " + std::to_string(k));
    }
  }
  double value() const noexcept { return k_; }
  double complement() const noexcept { return std::sqrt((1.0 - k_) * (1.0 + k_)); }

 private:
  double k_;
};

/// Amplitude in [0, pi/2].
class Amplitude {
 public:
  explicit Amplitude(double phi) : phi_(phi) {
    if (!(phi >= 0.0 && phi <= 0.5 * std::numbers::pi)) {
      throw std::domain_error("Amplitude: requires 0 <= phi <= pi/2, got " +
                              std::to_string(phi));
    }
  }
  double value() const noexcept { return phi_; }

 private:
  double phi_;
};

/// Characteristic n < 1 (circular and hyperbolic cases with the pole off [0, 1]).
class Characteristic {
 public:
  explicit Characteristic(double n) : n_(n) {
    if (!(n < 1.0) || std::isnan(n)) {
      throw std::domain_error("Characteristic: requires n < 1, got " + std::to_string(n));
    }
  }
  double value() const noexcept { return n_; }

 private:
  double n_;
};

struct CarlsonResult {
  double value = 0.0;
  int iterations = 0;
};

namespace detail {

inline constexpr int kCarlsonMaxIterations = 40;

// R_C(1, 1 + e) = atan(sqrt(e)) / sqrt(e), continued to e < 0 through atanh.
inline double carlson_rc_unit(double e) {
  if (std::abs(e) < 1e-8) return 1.0 - e / 3.0 + e * e / 5.0;
  if (e > 0.0) {
    const double s = std::sqrt(e);
    return std::atan(s) / s;
  }
  const double s = std::sqrt(-e);
  return std::atanh(s) / s;
}

}  // namespace detail

/// Carlson R_F(x, y, z); at most one argument may be zero.
inline CarlsonResult carlson_rf(double x, double y, double z) {
  if (!(x >= 0.0 && y >= 0.0 && z >= 0.0) || (x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
    throw std::domain_error("carlson_rf: arguments must be >= 0 with at most one zero");
  }
  const double a0 = (x + y + z) / 3.0;
  // Converged once 4^{-m} * max|a0 - v| <= r^{1/6} a0 with r = eps.
  double q = std::pow(3.0 * std::numeric_limits<double>::epsilon(), -1.0 / 6.0) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
  double a = a0;
  int m = 0;
  while (q > std::abs(a) && m < detail::kCarlsonMaxIterations) {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lambda = sx * sy + sx * sz + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    q *= 0.25;
    ++m;
  }
  const double dx = (a - x) / a;
  const double dy = (a - y) / a;
  const double dz = -(dx + dy);
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  const double poly = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
  return {poly / std::sqrt(a), m};
}

/// Carlson R_J(x, y, z, p) for p > 0; at most one of x, y, z may be zero.
inline CarlsonResult carlson_rj(double x, double y, double z, double p) {
  if (!(x >= 0.0 && y >= 0.0 && z >= 0.0 && p > 0.0) ||
      (x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
    throw std::domain_error("carlson_rj: requires x, y, z >= 0 (at most one zero) and p > 0");
  }
  const double a0 = (x + y + z + 2.0 * p) / 5.0;
  const double delta = (p - x) * (p - y) * (p - z);
  double q = std::pow(0.25 * std::numeric_limits<double>::epsilon(), -1.0 / 6.0) *
             std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z), std::abs(a0 - p)});
  double a = a0;
  double sum = 0.0;
  double scale = 1.0;  // 4^{-m}
  int m = 0;
  while (q > std::abs(a) && m < detail::kCarlsonMaxIterations) {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double sp = std::sqrt(p);
    const double lambda = sx * sy + sx * sz + sy * sz;
    const double d = (sp + sx) * (sp + sy) * (sp + sz);
    const double e = delta * scale * scale * scale / (d * d);
    sum += scale / d * detail::carlson_rc_unit(e);
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
    q *= 0.25;
    ++m;
  }
  const double dx = (a - x) / a;
  const double dy = (a - y) / a;
  const double dz = (a - z) / a;
  const double dp = -(dx + dy + dz) / 2.0;
  const double e2 = dx * dy + dx * dz + dy * dz - 3.0 * dp * dp;
  const double e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp * dp * dp;
  const double e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp * dp * dp) * dp;
  const double e5 = dx * dy * dz * dp * dp;
  const double poly = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                      3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return {scale * poly / (a * std::sqrt(a)) + 6.0 * sum, m};
}

/// F(phi, k).
inline double incomplete_F(const Amplitude& phi, const Modulus& k) {
  const double s = std::sin(phi.value());
  const double c = std::cos(phi.value());
  if (s == 0.0) return 0.0;
  const double kv = k.value();
  return s * carlson_rf(c * c, (1.0 - kv * s) * (1.0 + kv * s), 1.0).value;
}

/// K(k) for 0 < k < 1; k = 0 is rejected as a degenerate modulus.
inline double complete_K(const Modulus& k) {
  if (k.value() == 0.0) throw std::domain_error("complete_K: requires 0 < k < 1");
  const double kc = k.complement();
  return carlson_rf(0.0, kc * kc, 1.0).value;
}

inline double complete_K(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("complete_K: requires 0 < k < 1, got " + std::to_string(k));
  }
  return complete_K(Modulus(k));
}

/// Pi(n, k).
inline double complete_Pi(const Characteristic& n, const Modulus& k) {
  const double kc = k.complement();
  const double kc2 = kc * kc;
  const double rf = carlson_rf(0.0, kc2, 1.0).value;
  if (n.value() == 0.0) return rf;
  return rf + n.value() / 3.0 * carlson_rj(0.0, kc2, 1.0, 1.0 - n.value()).value;
}

inline double complete_Pi(double n, double k) {
  return complete_Pi(Characteristic(n), Modulus(k));
}

/// Relative residual of the descending Landen transformation
/// K(k) = (1 + k1) K(k1),  k1 = (1 - k') / (1 + k'), for 0 < k < 1.
inline double landen_residual(double k) {
  const Modulus m(k);
  const double kc = m.complement();
  const double k1 = (1.0 - kc) / (1.0 + kc);
  const double lhs = complete_K(m);
  const double k1_K = k1 > 0.0 ? complete_K(Modulus(k1)) : 0.5 * std::numbers::pi;
  const double rhs = (1.0 + k1) * k1_K;
  return std::abs(lhs - rhs) / lhs;
}

}  // namespace grverify
