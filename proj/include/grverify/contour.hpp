#pragma once

// Principal branches on the cut plane (complex plane minus the closed negative
// real axis) and integrals along a Hankel contour.
//
// The contour of width delta is the boundary of the set of points within
// distance delta of the negative real axis: the ray Im z = -delta coming in
// from -inf, a semicircle of radius delta around the origin, and the ray
// Im z = +delta going back out. It is parametrised by a real xi and traversed
// counterclockwise around the cut as xi increases. For delta = 1/2:
//
//   z(xi) = (xi + 1 - i) / 2        xi <= -1
//   z(xi) = exp(i pi xi / 2) / 2    -1 < xi < 1
//   z(xi) = (1 - xi + i) / 2        xi >= 1
//
// Other widths use the same curve scaled by 2 delta.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "grverify/quadrature.hpp"

namespace grverify {

/// Principal square root, |arg z| < pi. Throws std::domain_error on the cut
/// (z real and <= 0), where the principal branch is not analytic.
inline Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0 && !(z.real() > 0.0)) {
    throw std::domain_error("principal_sqrt: argument lies on the branch cut");
  }
  return std::sqrt(z);
}

/// sqrt(z + sqrt(z)) with principal branches; analytic on the cut plane
/// because z + sqrt(z) never reaches the negative real axis there.
inline Complex nested_radical(Complex z) { return principal_sqrt(z + principal_sqrt(z)); }

struct HankelPath {
  double delta = 0.5;
  /// Parameter truncation; +inf integrates the rays to infinity.
  double xi_max = kInfinity;

  /// Truncation for e^{tz} integrands: on the rays |e^{tz}| = e^{t delta (1 - xi)},
  /// so the discarded tail is below abs_tol past 1 + ln(1/abs_tol) / (t delta) (+10 margin).
  static HankelPath for_exponential(double t, double abs_tol, double delta = 0.5) {
    return {delta, 1.0 + std::log(1.0 / abs_tol) / (t * delta) + 10.0};
  }

  void validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("HankelPath: delta must be > 0");
    if (!(xi_max > 1.0)) throw std::invalid_argument("HankelPath: xi_max must be > 1");
  }
};

struct PathPoint {
  Complex z;
  Complex dz;  // dz / dxi
};

inline PathPoint hankel_point(double xi, const HankelPath& path = {}) {
  const double scale = 2.0 * path.delta;
  if (xi <= -1.0) return {scale * Complex(0.5 * (xi + 1.0), -0.5), Complex(0.5 * scale, 0.0)};
  if (xi >= 1.0) return {scale * Complex(0.5 * (1.0 - xi), 0.5), Complex(-0.5 * scale, 0.0)};
  const Complex rot = std::polar(1.0, 0.5 * std::numbers::pi * xi);
  return {scale * 0.5 * rot, scale * Complex(0.0, 0.25 * std::numbers::pi) * rot};
}

/// Result of (1 / 2 pi i) times a contour integral whose exact value is real.
struct ContourResult {
  double value = 0.0;
  double imag_residual = 0.0;  // imaginary part of the computed value
  double error_estimate = 0.0;
  long evals = 0;
  bool converged = false;
};

namespace detail {

// (1 / 2 pi i) \int_H g(z) dz over the three pieces of the path.
template <class G>
ContourResult hankel_integral(G&& g, const HankelPath& path, const QuadratureConfig& cfg,
                              double extra_error = 0.0) {
  path.validate();
  QuadratureConfig piece = cfg;
  piece.abs_tol = cfg.abs_tol * 2.0 * std::numbers::pi / 3.0;
  piece.max_evals = std::max<long>(15, cfg.max_evals / 3);

  auto along = [&](double xi) {
    const PathPoint p = hankel_point(xi, path);
    return g(p.z) * p.dz;
  };
  auto lower_ray = [&](double eta) { return along(-eta); };  // xi = -eta, eta >= 1

  const double end = path.xi_max;
  const bool infinite = std::isinf(end);
  const Interval ray = infinite ? Interval(1.0, kInfinity) : Interval(1.0, end);

  const auto low = integrate_complex(lower_ray, ray, piece);
  const auto mid = integrate_complex(along, Interval(-1.0, 1.0), piece);
  const auto up = integrate_complex(along, ray, piece);
  const Complex total = low.value + mid.value + up.value;
  const double two_pi = 2.0 * std::numbers::pi;

  ContourResult out;
  out.value = total.imag() / two_pi;
  out.imag_residual = -total.real() / two_pi;
  out.error_estimate =
      (low.error_estimate + mid.error_estimate + up.error_estimate) / two_pi + extra_error;
  out.evals = low.evals + mid.evals + up.evals;
  out.converged = low.converged && mid.converged && up.converged &&
                  out.error_estimate <= cfg.abs_tol;
  return out;
}

}  // namespace detail

/// (1 / 2 pi i) \int_H e^{tz} / sqrt(z + sqrt(z)) dz for t > 0.
inline ContourResult hankel_exp_integral(double t, const HankelPath& path,
                                         const QuadratureConfig& cfg = {}) {
  if (!(t > 0.0)) throw std::domain_error("hankel_exp_integral: requires t > 0");
  return detail::hankel_integral([t](Complex z) { return std::exp(t * z) / nested_radical(z); },
                                 path, cfg);
}

inline ContourResult hankel_exp_integral(double t, const QuadratureConfig& cfg = {}) {
  return hankel_exp_integral(t, HankelPath::for_exponential(t, cfg.abs_tol), cfg);
}

/// (1 / 2 pi i) \int_H dz / (sqrt(z + sqrt(z)) (1 - z + c)) for c >= 0.
///
/// The simple pole at w = 1 + c lies to the right of the contour, so the
/// value equals 1 / sqrt(w + sqrt(w)). With a finite xi_max the two ray tails,
/// which decay like xi^{-3/2}, are bounded analytically and added to the
/// error estimate.
inline ContourResult hankel_resolvent_integral(double c, const HankelPath& path = {},
                                               const QuadratureConfig& cfg = {}) {
  if (!(c >= 0.0)) throw std::domain_error("hankel_resolvent_integral: requires c >= 0");
  if (!(path.delta < 1.0 + c)) {
    throw std::domain_error("hankel_resolvent_integral: pole must lie right of the contour");
  }
  double tail = 0.0;
  if (std::isfinite(path.xi_max)) {
    // |g dz| ~ (s/2) |z|^{-3/2} with |z| ~ s xi / 2 on each ray, s = 2 delta.
    const double s = 2.0 * path.delta;
    tail = 2.0 * 2.0 / std::sqrt(0.5 * s * path.xi_max) / (2.0 * std::numbers::pi);
  }
  const double one_plus_c = 1.0 + c;
  return detail::hankel_integral(
      [one_plus_c](Complex z) { return 1.0 / (nested_radical(z) * (one_plus_c - z)); }, path, cfg,
      tail);
}

}  // namespace grverify
