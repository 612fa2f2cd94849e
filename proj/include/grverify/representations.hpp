#pragma once

// Independent expressions for
//
//   I = \int_0^inf dx / ((1 + x^2)^{3/2} sqrt(phi(x) + sqrt(phi(x)))),
//   phi(x) = 1 + 4x^2 / (3 (1 + x^2)^2),
//
// each evaluated through a different route, plus the auxiliary functions
// the routes are written in.
//
// Delta(x) = (x^2 - 1)(1 - k^2 x^2) with k = 2 - sqrt3; it vanishes at 1 and 1/k.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "grverify/constants.hpp"
#include "grverify/elliptic.hpp"
#include "grverify/quadrature.hpp"
#include "grverify/series_forms.hpp"

namespace grverify {

inline double phi(double x) {
  const double q = 1.0 + x * x;
  return 1.0 + 4.0 * x * x / (3.0 * q * q);
}

inline double h(double y) {
  const double y2 = y * y;
  return 1.0 + 4.0 / 3.0 * (y2 - y2 * y2);
}

/// (3 + 4y^2) / ((1 - 4y^2)(9 - 4y^2)) on |y| < 1/2.
inline double A(double y) {
  if (!(std::abs(y) < 0.5)) {
    throw std::domain_error("A: requires |y| < 1/2, got " + std::to_string(y));
  }
  const double y2 = y * y;
  return (3.0 + 4.0 * y2) / ((1.0 - 4.0 * y2) * (9.0 - 4.0 * y2));
}

/// B(t) - 1/4 = -2 / (1 + 8t + sqrt(1 + 32t + 64t^2)), free of cancellation.
inline double B_minus_quarter(double t) {
  if (!(t > 0.0)) throw std::domain_error("B: requires t > 0, got " + std::to_string(t));
  return -2.0 / (1.0 + 8.0 * t + std::sqrt(1.0 + 32.0 * t + 64.0 * t * t));
}

/// (1 + 10t - sqrt(1 + 32t + 64t^2)) / (8t), t > 0; the inverse of A on [0, 1/2).
inline double B(double t) { return 0.25 + B_minus_quarter(t); }

/// The t at which sqrt(B(t)) = sqrt3 - 3/2, i.e. A(sqrt3 - 3/2).
inline double b_threshold() { return (2.0 + std::numbers::sqrt3) / 8.0; }

enum class RepresentationId { R0, R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12 };

inline constexpr std::size_t kRepresentationCount = 13;

struct RepresentationInfo {
  RepresentationId id;
  std::string_view name;
  std::string_view description;
  std::string_view anchor;  // the formula the evaluator implements
};

inline constexpr std::array<RepresentationInfo, kRepresentationCount> kRepresentations{{
    {RepresentationId::R0, "R0", "defining integral over [0, inf)",
     "int_0^inf dx / ((1+x^2)^{3/2} sqrt(phi + sqrt phi))"},
    {RepresentationId::R1, "R1", "folded onto [0, 1]", "int_0^1 dy / sqrt(h + sqrt h)"},
    {RepresentationId::R2, "R2", "double series, outer sum accelerated",
     "sum_n (-1)^n binom(2n,n)/4^n sum_k ..."},
    {RepresentationId::R3, "R3", "Laplace-type integral of the Hankel and U factors",
     "int_0^inf S(t) U(t) e^{-t} dt"},
    {RepresentationId::R4, "R4", "polynomial radicand on [0, 1]",
     "int_0^1 dx / sqrt(g + sqrt g), g = 1 + 16/3 x^2 (1-x)^2"},
    {RepresentationId::R5, "R5", "square-root singularity at x = 1",
     "int_0^1 dx / (2 sqrt(1-x) sqrt(1 + x^2/3 + sqrt(1 + x^2/3)))"},
    {RepresentationId::R6, "R6", "rational radicand on [0, 2 - sqrt3]",
     "sqrt3/sqrt(2-sqrt3) int_0^{2-sqrt3} f(x) / (2+sqrt3-x) dx"},
    {RepresentationId::R7, "R7", "rational radicand on [2, 2 + sqrt3]",
     "sqrt3/sqrt(2+sqrt3) int_2^{2+sqrt3} f(x) / (x-2+sqrt3) dx"},
    {RepresentationId::R8, "R8", "logarithmic t-integral",
     "C0 + 2sqrt3/sqrt(2-sqrt3) int_{t0}^inf ln((2+sqrt3)/(3/2+sqrt3+sqrt B)) / (2 sqrt t) dt"},
    {RepresentationId::R9, "R9", "difference of two integrals on [4, 4(3sqrt3-4)]",
     "2sqrt3/sqrt(2-sqrt3) (H1 - H2)"},
    {RepresentationId::R10, "R10", "a J1 + b J2 over Delta", "a J1 + b J2"},
    {RepresentationId::R11, "R11", "three integrals over Delta",
     "(sqrt3 I1 + (sqrt3-3) I2 - 3 I3) / (2 sqrt2)"},
    {RepresentationId::R12, "R12", "elliptic closed form",
     "((sqrt3-1) Pi(2-sqrt3, 1/sqrt3) - F(arcsin sqrt(2-sqrt3), 1/sqrt3)) / sqrt2"},
}};

inline const RepresentationInfo& info(RepresentationId id) {
  return kRepresentations[static_cast<std::size_t>(id)];
}

inline std::optional<RepresentationId> parse_representation(std::string_view name) {
  for (const auto& r : kRepresentations) {
    if (r.name == name) return r.id;
  }
  return std::nullopt;
}

namespace detail {

// Sum of quadrature results with a common scale factor on each.
struct Accumulator {
  QuadratureResult<double> out{0.0, 0.0, 0, true};
  void add(const QuadratureResult<double>& r, double factor = 1.0) {
    out.value += factor * r.value;
    out.error_estimate += std::abs(factor) * r.error_estimate;
    out.evals += r.evals;
    out.converged = out.converged && r.converged;
  }
};

inline QuadratureConfig scaled(const QuadratureConfig& cfg, double factor) {
  QuadratureConfig c = cfg;
  c.abs_tol = cfg.abs_tol / std::abs(factor);
  return c;
}

inline double radical_form(double q) { return 1.0 / std::sqrt(q + std::sqrt(q)); }

// sqrt((1 - x + x^2) / (x (1 - x^2)(2 - x))) with the vanishing factor passed
// exactly: (x, 1 - x, 2 - x) may each be supplied by the caller.
inline double rational_radicand(double x, double x_factor, double two_minus_x) {
  return std::sqrt((1.0 - x + x * x) / (x_factor * (1.0 - x) * (1.0 + x) * two_minus_x));
}

// 1 / sqrt(Delta(x)) with x - 1 and 1 - k x given exactly.
inline double inv_sqrt_delta(double x, double x_minus_1, double one_minus_kx, double k) {
  return 1.0 / std::sqrt(x_minus_1 * (x + 1.0) * one_minus_kx * (1.0 + k * x));
}

// The three Delta-integrals of the closed-form reduction:
//   I1 = int_1^{1/k} dx / sqrt(Delta)
//   I2 = int_1^{a}   dx / sqrt(Delta),  a = (1 + sqrt3)/2
//   I3 = int_1^{1/k} dx / ((x + 1 + sqrt3) sqrt(Delta))
inline QuadratureResult<double> delta_integral_1(const QuadratureConfig& cfg) {
  const double k = constants().k;
  const double hi = constants().inv_k;
  return integrate(
      [k](double x, double dl, double du) { return inv_sqrt_delta(x, dl, k * du, k); },
      Interval(1.0, hi, Singular::both), cfg);
}

inline QuadratureResult<double> delta_integral_2(const QuadratureConfig& cfg) {
  const double k = constants().k;
  return integrate(
      [k](double x, double dl, double) { return inv_sqrt_delta(x, dl, 1.0 - k * x, k); },
      Interval(1.0, constants().a_upper, Singular::lower), cfg);
}

inline QuadratureResult<double> delta_integral_3(const QuadratureConfig& cfg) {
  const double k = constants().k;
  const double shift = 1.0 + std::numbers::sqrt3;
  return integrate(
      [k, shift](double x, double dl, double du) {
        return inv_sqrt_delta(x, dl, k * du, k) / (x + shift);
      },
      Interval(1.0, constants().inv_k, Singular::both), cfg);
}

// H1, H2 on [4, 4(3 sqrt3 - 4)], singular at 4 through x^2 - 16.
inline double h_common(double x, double x_minus_4) {
  return std::sqrt((8.0 - x) / (x_minus_4 * (x + 4.0)));
}

inline double h_pole(double x) { return 4.0 * (4.0 + 3.0 * std::numbers::sqrt3) + x; }

inline QuadratureResult<double> h1_integral(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  return integrate(
      [s3](double x, double dl, double) {
        return 0.5 * h_common(x, dl) * (3.0 + 2.0 * s3) / (h_pole(x) * std::sqrt(5.0 - x));
      },
      Interval(4.0, 4.0 * (3.0 * s3 - 4.0), Singular::lower), cfg);
}

inline QuadratureResult<double> h2_integral(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  return integrate([](double x, double dl, double) { return 0.5 * h_common(x, dl) / h_pole(x); },
                   Interval(4.0, 4.0 * (3.0 * s3 - 4.0), Singular::lower), cfg);
}

inline QuadratureResult<double> eval_r0(const QuadratureConfig& cfg) {
  // (1 + x^2)^{-3/2} is rewritten for large x so nothing overflows.
  return integrate(
      [](double x) {
        const double p = phi(x);
        const double weight = x <= 1.0 ? std::pow(1.0 + x * x, -1.5)
                                        : std::pow(x, -3.0) * std::pow(1.0 + 1.0 / (x * x), -1.5);
        return weight * radical_form(p);
      },
      Interval(0.0, kInfinity), cfg);
}

inline QuadratureResult<double> eval_r1(const QuadratureConfig& cfg) {
  return integrate([](double y) { return radical_form(h(y)); }, Interval(0.0, 1.0), cfg);
}

inline QuadratureResult<double> eval_r2(const SeriesConfig& scfg) {
  const SeriesResult s = double_series_I(scfg);
  return {s.value, s.tail_estimate + s.roundoff, s.terms_used, s.converged};
}

// Upper cut-off of the t-integral; e^{-40} S U is below 1e-18.
inline constexpr double kLaplaceCutoff = 40.0;

inline QuadratureResult<double> eval_r3(const QuadratureConfig& cfg, const SeriesConfig& scfg) {
  QuadratureConfig outer = cfg;
  QuadratureConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol * 1e-2;
  inner.max_evals = std::max<long>(15, cfg.max_evals / 20);
  long inner_evals = 0;
  bool inner_ok = true;
  auto integrand = [&](double t) {
    const auto s = hankel_value(t, inner, scfg);
    const auto u = u_value(t, inner, scfg);
    inner_evals += s.evals + u.evals;
    inner_ok = inner_ok && s.converged && u.converged;
    return s.value * u.value * std::exp(-t);
  };
  Accumulator acc;
  outer.abs_tol = cfg.abs_tol / 2.0;
  acc.add(integrate([&](double, double dl, double) { return integrand(dl); },
                    Interval(0.0, kHankelSeriesSwitch, Singular::lower), outer));
  acc.add(integrate(integrand, Interval(kHankelSeriesSwitch, kLaplaceCutoff), outer));
  // Tail beyond the cut-off: S and U are bounded there, so the integral is
  // at most |S(T) U(T)| e^{-T}.
  const double tail = std::abs(integrand(kLaplaceCutoff));
  acc.out.error_estimate += tail;
  acc.out.evals += inner_evals;
  acc.out.converged = acc.out.converged && inner_ok;
  return acc.out;
}

inline QuadratureResult<double> eval_r4(const QuadratureConfig& cfg) {
  return integrate(
      [](double x) {
        const double w = x * (1.0 - x);
        return radical_form(1.0 + 16.0 / 3.0 * w * w);
      },
      Interval(0.0, 1.0), cfg);
}

inline QuadratureResult<double> eval_r5(const QuadratureConfig& cfg) {
  return integrate(
      [](double x, double, double du) {
        return radical_form(1.0 + x * x / 3.0) / (2.0 * std::sqrt(du));
      },
      Interval(0.0, 1.0, Singular::upper), cfg);
}

inline QuadratureResult<double> eval_r6(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  const double factor = s3 / std::sqrt(2.0 - s3);
  auto r = integrate(
      [s3](double x, double dl, double) {
        return rational_radicand(x, dl, 2.0 - x) / (2.0 + s3 - x);
      },
      Interval(0.0, constants().k, Singular::lower), scaled(cfg, factor));
  r.value *= factor;
  r.error_estimate *= factor;
  return r;
}

inline QuadratureResult<double> eval_r7(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  const double factor = s3 / std::sqrt(2.0 + s3);
  auto r = integrate(
      [s3](double x, double dl, double) {
        // (1 - x^2)(2 - x) > 0 on (2, 2 + sqrt3); both factors change sign together.
        return rational_radicand(x, x, -dl) / (x - 2.0 + s3);
      },
      Interval(2.0, 2.0 + s3, Singular::lower), scaled(cfg, factor));
  r.value *= factor;
  r.error_estimate *= factor;
  return r;
}

inline QuadratureResult<double> eval_r8(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  const double factor = 2.0 * s3 / std::sqrt(2.0 - s3);
  // ln((2 + sqrt3) / (3/2 + sqrt3 + sqrt B)) = -log1p((sqrt B - 1/2) / (2 + sqrt3)),
  // with sqrt B - 1/2 = (B - 1/4) / (sqrt B + 1/2).
  auto r = integrate(
      [s3](double t) {
        const double bq = B_minus_quarter(t);
        const double gap = bq / (std::sqrt(0.25 + bq) + 0.5);
        return -std::log1p(gap / (2.0 + s3)) / (2.0 * std::sqrt(t));
      },
      Interval(b_threshold(), kInfinity), scaled(cfg, factor));
  r.value = constants().C0 + factor * r.value;
  r.error_estimate *= factor;
  return r;
}

inline QuadratureResult<double> eval_r9(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  const double factor = 2.0 * s3 / std::sqrt(2.0 - s3);
  const QuadratureConfig piece = scaled(cfg, 2.0 * factor);
  Accumulator acc;
  acc.add(h1_integral(piece), factor);
  acc.add(h2_integral(piece), -factor);
  return acc.out;
}

inline QuadratureResult<double> eval_r10(const QuadratureConfig& cfg) {
  const Constants& c = constants();
  const double k = c.k;
  const double shift = 1.0 + std::numbers::sqrt3;
  // J1 = int_a^{1/k} (x + 1) / (x + 1 + sqrt3) dx / sqrt(Delta)
  const auto j1 = integrate(
      [k, shift](double x, double, double du) {
        return (x + 1.0) / (x + shift) * inv_sqrt_delta(x, x - 1.0, k * du, k);
      },
      Interval(c.a_upper, c.inv_k, Singular::upper), scaled(cfg, 2.0 * c.coeff_a));
  // J2 = int_1^a (x - 2 - sqrt3) / (x + 1 + sqrt3) dx / sqrt(Delta)
  const auto j2 = integrate(
      [k, shift, &c](double x, double dl, double) {
        return (x - c.inv_k) / (x + shift) * inv_sqrt_delta(x, dl, 1.0 - k * x, k);
      },
      Interval(1.0, c.a_upper, Singular::lower), scaled(cfg, 2.0 * c.coeff_b));
  Accumulator acc;
  acc.add(j1, c.coeff_a);
  acc.add(j2, c.coeff_b);
  return acc.out;
}

inline QuadratureResult<double> eval_r11(const QuadratureConfig& cfg) {
  const double s3 = std::numbers::sqrt3;
  const double scale = 1.0 / (2.0 * std::numbers::sqrt2);
  Accumulator acc;
  acc.add(delta_integral_1(scaled(cfg, 3.0 * s3 * scale)), s3 * scale);
  acc.add(delta_integral_2(scaled(cfg, 3.0 * (3.0 - s3) * scale)), (s3 - 3.0) * scale);
  acc.add(delta_integral_3(scaled(cfg, 9.0 * scale)), -3.0 * scale);
  return acc.out;
}

inline QuadratureResult<double> eval_r12() {
  const Constants& c = constants();
  const double s3 = std::numbers::sqrt3;
  const Modulus k1(1.0 / s3);
  const double pi3 = complete_Pi(Characteristic(c.k), k1);
  const double f = incomplete_F(Amplitude(c.alpha), k1);
  return {((s3 - 1.0) * pi3 - f) / std::numbers::sqrt2, 0.0, 0, true};
}

}  // namespace detail

/// Estimate of I through the given representation. R2 and R3 may return
/// converged = false together with their best value.
inline QuadratureResult<double> eval_representation(RepresentationId rep,
                                                    const QuadratureConfig& cfg = {},
                                                    const SeriesConfig& scfg = {}) {
  switch (rep) {
    case RepresentationId::R0: return detail::eval_r0(cfg);
    case RepresentationId::R1: return detail::eval_r1(cfg);
    case RepresentationId::R2: return detail::eval_r2(scfg);
    case RepresentationId::R3: return detail::eval_r3(cfg, scfg);
    case RepresentationId::R4: return detail::eval_r4(cfg);
    case RepresentationId::R5: return detail::eval_r5(cfg);
    case RepresentationId::R6: return detail::eval_r6(cfg);
    case RepresentationId::R7: return detail::eval_r7(cfg);
    case RepresentationId::R8: return detail::eval_r8(cfg);
    case RepresentationId::R9: return detail::eval_r9(cfg);
    case RepresentationId::R10: return detail::eval_r10(cfg);
    case RepresentationId::R11: return detail::eval_r11(cfg);
    case RepresentationId::R12: return detail::eval_r12();
  }
  throw std::invalid_argument("eval_representation: unknown id");
}

struct IdentityInfo {
  std::string_view id;
  std::string_view description;
  std::string_view anchor;
};

inline constexpr std::array<IdentityInfo, 3> kEllipticIdentities{{
    {"V0-kprime", "int_1^{1/k} dx/sqrt(Delta) against K(k')", "I1 = K(k')"},
    {"V1-bf25600", "int_1^a dx/sqrt(Delta) against F",
     "I2 = (3+sqrt3)/3 F(arcsin sqrt k, 1/sqrt3)"},
    {"V2-bf25639", "int_1^{1/k} dx/((x+1+sqrt3) sqrt(Delta)) against K and Pi",
     "I3 = (1+sqrt3)/3 K(1/sqrt3) - 2(sqrt3-1)/3 Pi(2-sqrt3, 1/sqrt3)"},
}};

/// The Delta-integral by quadrature next to its elliptic closed form.
struct EllipticIdentity {
  QuadratureResult<double> lhs;
  double rhs;
};

/// The three Delta-integrals I1, I2, I3 (in kEllipticIdentities order).
inline std::array<EllipticIdentity, 3> elliptic_identities(const QuadratureConfig& cfg = {}) {
  const Constants& c = constants();
  const double s3 = std::numbers::sqrt3;
  const Modulus k1(1.0 / s3);
  return {{
      {detail::delta_integral_1(cfg), complete_K(Modulus(c.k_prime))},
      {detail::delta_integral_2(cfg), (3.0 + s3) / 3.0 * incomplete_F(Amplitude(c.alpha), k1)},
      {detail::delta_integral_3(cfg),
       (1.0 + s3) / 3.0 * complete_K(k1) -
           2.0 * (s3 - 1.0) / 3.0 * complete_Pi(Characteristic(c.k), k1)},
  }};
}

}  // namespace grverify
