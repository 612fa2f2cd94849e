#pragma once

// Series representations:
//
//   U(t)     = sum_k (-1)^k / k! * 4^k (2k)!^2 / (4k+1)! * (4t/3)^k
//            = \int_0^1 exp(-16/3 u^2 (1-u)^2 t) du
//   S(t)     = sum_n (-1)^n binom(2n,n)/4^n * t^{(n-1)/2} / Gamma((n+1)/2)
//   inner(n) = sum_k (-1)^k / k! * Gamma((n+1)/2 + k)/Gamma((n+1)/2)
//                     * (16/3)^k (2k)!^2 / (4k+1)!
//   I        = sum_n (-1)^n binom(2n,n)/4^n * inner(n)
//
// The outer sum for I converges only conditionally; the n-sum must be taken
// outside the k-sum.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "grverify/contour.hpp"
#include "grverify/quadrature.hpp"
#include "grverify/special_fn.hpp"

namespace grverify {

struct SeriesConfig {
  int max_terms = 400;
  double tail_tol = 1e-15;
  bool accelerate = true;

  void validate() const {
    if (max_terms < 4) throw std::invalid_argument("SeriesConfig: max_terms must be >= 4");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("SeriesConfig: tail_tol must be > 0");
  }
};

struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double tail_estimate = 0.0;  // truncation bound
  double roundoff = 0.0;       // cancellation bound, eps * sum |term|
  bool converged = false;
};

/// Below this t the U series is used, above it the integral.
inline constexpr double kUSeriesSwitch = 2.0;
/// Below this t the Hankel series is used, above it the contour integral.
inline constexpr double kHankelSeriesSwitch = 8.0;

namespace detail {
inline constexpr double kSeriesEps = std::numeric_limits<double>::epsilon();

// (2k+1)^2 (2k+2)^2 / ((4k+2)(4k+3)(4k+4)(4k+5)): step of (2k)!^2 / (4k+1)!.
inline double beta_step(int k) noexcept {
  const double kk = static_cast<double>(k);
  return (2.0 * kk + 1.0) * (2.0 * kk + 2.0) / (4.0 * (4.0 * kk + 3.0) * (4.0 * kk + 5.0));
}
}  // namespace detail

/// U(t) by its alternating power series. Practical for t <= kUSeriesSwitch;
/// works for moderately larger t at the cost of cancellation.
inline SeriesResult u_series(double t, const SeriesConfig& cfg = {}) {
  cfg.validate();
  if (!(t >= 0.0)) throw std::domain_error("u_series: requires t >= 0");
  const double x = 16.0 * t / 3.0;
  double term = 1.0;
  double sum = 0.0;
  double abs_sum = 0.0;
  SeriesResult r;
  for (int k = 0; k < cfg.max_terms; ++k) {
    sum += term;
    abs_sum += std::abs(term);
    const double ratio = x / (k + 1.0) * detail::beta_step(k);
    const double next = -term * ratio;
    r.terms_used = k + 1;
    // Alternating with decreasing magnitude from here on: remainder <= |next|.
    if (ratio < 1.0 && std::abs(next) <= cfg.tail_tol) {
      r.tail_estimate = std::abs(next);
      r.converged = true;
      break;
    }
    r.tail_estimate = std::abs(next);
    term = next;
  }
  r.value = sum;
  r.roundoff = detail::kSeriesEps * abs_sum;
  return r;
}

/// U(t) by quadrature; 0 < U(t) <= 1.
inline QuadratureResult<double> u_integral(double t, const QuadratureConfig& cfg = {}) {
  if (!(t >= 0.0)) throw std::domain_error("u_integral: requires t >= 0");
  const double x = 16.0 * t / 3.0;
  return integrate(
      [x](double u) {
        const double w = u * (1.0 - u);
        return std::exp(-x * w * w);
      },
      Interval(0.0, 1.0), cfg);
}

/// U(t), choosing the series or the integral by kUSeriesSwitch.
inline QuadratureResult<double> u_value(double t, const QuadratureConfig& cfg = {},
                                        const SeriesConfig& scfg = {}) {
  if (t <= kUSeriesSwitch) {
    const SeriesResult s = u_series(t, scfg);
    return {s.value, s.tail_estimate + s.roundoff, s.terms_used, s.converged};
  }
  return u_integral(t, cfg);
}

/// Unsigned n-th term of S(t): binom(2n,n)/4^n * t^{(n-1)/2} / Gamma((n+1)/2),
/// evaluated in log space.
inline double hankel_term(unsigned n, double t) {
  if (!(t > 0.0)) throw std::domain_error("hankel_term: requires t > 0");
  const double nn = static_cast<double>(n);
  return central_binomial_ratio(n) *
         std::exp(0.5 * (nn - 1.0) * std::log(t) - log_gamma(0.5 * (nn + 1.0)));
}

/// S(t) by its series. Terms grow to about e^t / (2 pi t) near n = 2t before
/// decaying, so the sum loses roughly log10 of that many digits; t beyond
/// the point where every digit would be lost is rejected with std::overflow_error.
inline SeriesResult hankel_series(double t, const SeriesConfig& cfg = {}) {
  cfg.validate();
  if (!(t > 0.0)) throw std::domain_error("hankel_series: requires t > 0");
  if (t > 2.0 && std::exp(t) / (2.0 * std::numbers::pi * t) * detail::kSeriesEps > 1e-2) {
    throw std::overflow_error("hankel_series: cancellation destroys all digits for t = " +
                              std::to_string(t));
  }
  // f(n+2) = f(n) * (2n+1)(2n+3) / ((2n+2)(2n+4)) * 2t / (n+1); the two parities
  // are seeded with f(0) = 1/sqrt(pi t) and f(1) = 1/2.
  double even = 1.0 / std::sqrt(std::numbers::pi * t);
  double odd = 0.5;
  const int settle = static_cast<int>(std::ceil(2.0 * t));  // monotone decrease from here
  double sum = 0.0;
  double abs_sum = 0.0;
  SeriesResult r;
  for (int n = 0; n < cfg.max_terms; ++n) {
    double& f = (n % 2 == 0) ? even : odd;
    sum += (n % 2 == 0) ? f : -f;
    abs_sum += f;
    const double nn = static_cast<double>(n);
    const double current = f;
    f *= (2.0 * nn + 1.0) * (2.0 * nn + 3.0) / ((2.0 * nn + 2.0) * (2.0 * nn + 4.0)) * 2.0 * t /
         (nn + 1.0);
    const double next = (n % 2 == 0) ? odd : even;  // f(n+1)
    r.terms_used = n + 1;
    r.tail_estimate = next;
    if (n + 1 >= std::max(settle, 1) && next <= current && next <= cfg.tail_tol) {
      r.converged = true;
      break;
    }
  }
  r.value = sum;
  r.roundoff = detail::kSeriesEps * abs_sum;
  return r;
}

/// S(t) through the series below kHankelSeriesSwitch and the contour integral
/// above it. The contour width shrinks like 1/t so that |e^{tz}| stays O(1)
/// on the semicircle.
inline QuadratureResult<double> hankel_value(double t, const QuadratureConfig& cfg = {},
                                             const SeriesConfig& scfg = {}) {
  if (t <= kHankelSeriesSwitch) {
    const SeriesResult s = hankel_series(t, scfg);
    return {s.value, s.tail_estimate + s.roundoff, s.terms_used, s.converged};
  }
  const double delta = std::min(0.5, 0.5 / t);
  const ContourResult c =
      hankel_exp_integral(t, HankelPath::for_exponential(t, cfg.abs_tol, delta), cfg);
  return {c.value, c.error_estimate, c.evals, c.converged};
}

/// Signed k-th term of inner(n). Evaluated in log space once n + 2k > 60,
/// where the factorials involved leave the double range.
inline double inner_k_term(unsigned n, unsigned k) {
  const double kk = static_cast<double>(k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  if (n + 2 * k <= 60) {
    double beta = 1.0;  // (2k)!^2 / (4k+1)!
    for (unsigned j = 0; j < k; ++j) beta *= detail::beta_step(static_cast<int>(j));
    return sign * pochhammer_half(n, k) / std::tgamma(kk + 1.0) * std::pow(16.0 / 3.0, kk) *
           beta;
  }
  const double s = 0.5 * (static_cast<double>(n) + 1.0);
  const double log_mag = log_gamma(s + kk) - log_gamma(s) - log_gamma(kk + 1.0) +
                         kk * std::log(16.0 / 3.0) + 2.0 * log_gamma(2.0 * kk + 1.0) -
                         log_gamma(4.0 * kk + 2.0);
  return sign * std::exp(log_mag);
}

/// inner(n) = int_0^1 (1 + 16/3 w^2)^{-s} du with w = u(1 - u), s = (n+1)/2.
/// The literal k-sum alternates and its terms grow before they decay once n is
/// large, so it is summed in the equivalent positive form
///   inner(n) = (3/4)^s sum_k (s)_k / k! 4^{-k} M_k,  M_k = int_0^1 (2v^2 - v^4)^k dv,
/// which comes from 1 + 16/3 w^2 = 4/3 (1 - x), x = (1 - 16 w^2)/4 in [0, 1/4].
/// M_k and Q_k = int_0^1 v^2 (2v^2 - v^4)^k dv follow from integration by parts.
inline SeriesResult inner_k_sum(unsigned n, const SeriesConfig& cfg = {}) {
  cfg.validate();
  const double s = 0.5 * (static_cast<double>(n) + 1.0);
  double m = 1.0;          // M_k
  double q = 1.0 / 3.0;    // Q_k
  double coeff = 1.0;      // (s)_k / k! 4^{-k}
  double sum = 0.0;
  SeriesResult r;
  for (int k = 0; k < cfg.max_terms; ++k) {
    sum += coeff * m;
    r.terms_used = k + 1;
    const double kk = static_cast<double>(k);
    const double k1 = kk + 1.0;
    const double m_next = (1.0 + 4.0 * k1 * q) / (1.0 + 4.0 * k1);
    const double q_next = (1.0 + 8.0 * k1 * q - 4.0 * k1 * m_next) / (3.0 + 4.0 * k1);
    const double c_next = coeff * (s + kk) / (4.0 * k1);
    // M_k decreases, so for j > k the term ratio is at most max(1, (s+k+1)/(k+2)) / 4.
    const double rho = std::max(1.0, (s + kk + 1.0) / (kk + 2.0)) / 4.0;
    r.tail_estimate = rho < 1.0 ? c_next * m_next / (1.0 - rho) : kInfinity;
    if (r.tail_estimate <= cfg.tail_tol * sum) {
      r.converged = true;
      break;
    }
    m = m_next;
    q = q_next;
    coeff = c_next;
  }
  const double scale = std::exp(s * std::log(0.75));
  r.value = scale * sum;
  r.tail_estimate *= scale;
  r.roundoff = 4.0 * static_cast<double>(r.terms_used) * detail::kSeriesEps * r.value;
  return r;
}

/// Signed outer term (-1)^n binom(2n,n)/4^n inner(n), with inner(n) summed to cfg.
inline SeriesResult outer_term(unsigned n, const SeriesConfig& cfg = {}) {
  SeriesResult inner = inner_k_sum(n, cfg);
  const double c = central_binomial_ratio(n) * ((n % 2 == 0) ? 1.0 : -1.0);
  inner.value *= c;
  inner.tail_estimate *= std::abs(c);
  inner.roundoff *= std::abs(c);
  return inner;
}

/// Plain partial sum over n = 0..last of the double series.
inline double double_series_partial_sum(unsigned last, const SeriesConfig& cfg = {}) {
  double sum = 0.0;
  for (unsigned n = 0; n <= last; ++n) sum += outer_term(n, cfg).value;
  return sum;
}

namespace detail {

// Cohen-Rodriguez Villegas-Zagier acceleration of sum (-1)^k a_k from a_0..a_{N-1}.
// The weights c_k / d lie in [0, 1], so errors in a_k are not amplified.
inline double crvz_alternating(const std::vector<double>& a, std::size_t count,
                               double* weighted_abs = nullptr, const double* a_err = nullptr) {
  const double n = static_cast<double>(count);
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  double err = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double kk = static_cast<double>(k);
    c = b - c;
    s += c * a[k];
    if (a_err) err += std::abs(c) * a_err[k];
    b = (kk + n) * (kk - n) * b / ((kk + 0.5) * (kk + 1.0));
  }
  if (weighted_abs) *weighted_abs = err / d;
  return s / d;
}

}  // namespace detail

/// The length of the accelerated outer sum.
inline constexpr int kOuterTerms = 40;
/// The consistency estimate compares against a sum this many terms shorter.
inline constexpr int kOuterConsistencyGap = 8;

/// I from the double series.
///
/// With cfg.accelerate the outer alternating sum is accelerated (N =
/// min(max_terms, kOuterTerms) terms); tail_estimate is the disagreement with
/// the N - kOuterConsistencyGap estimate. If the outer terms fail to alternate
/// strictly, or without acceleration, the mean of the last two partial sums
/// is returned; the sum lies between them when the magnitudes decrease, so
/// the tail is half the last term.
inline SeriesResult double_series_I(const SeriesConfig& cfg = {}) {
  cfg.validate();
  const int count = cfg.accelerate ? std::min(cfg.max_terms, kOuterTerms) : cfg.max_terms;
  std::vector<double> magnitude(static_cast<std::size_t>(count));
  std::vector<double> error(static_cast<std::size_t>(count));
  bool inner_ok = true;
  bool alternating = true;
  int evaluations = 0;
  for (int n = 0; n < count; ++n) {
    const SeriesResult t = outer_term(static_cast<unsigned>(n), cfg);
    const double expected_sign = (n % 2 == 0) ? 1.0 : -1.0;
    alternating = alternating && t.value * expected_sign > 0.0;
    magnitude[n] = std::abs(t.value);
    error[n] = t.tail_estimate + t.roundoff;
    inner_ok = inner_ok && t.converged;
    evaluations += t.terms_used;
  }

  SeriesResult r;
  r.terms_used = evaluations;
  if (cfg.accelerate && alternating && count > kOuterConsistencyGap) {
    double propagated = 0.0;
    r.value = detail::crvz_alternating(magnitude, static_cast<std::size_t>(count), &propagated,
                                       error.data());
    const double shorter = detail::crvz_alternating(
        magnitude, static_cast<std::size_t>(count - kOuterConsistencyGap));
    r.tail_estimate = std::abs(r.value - shorter);
    r.roundoff = propagated;
  } else {
    double previous = 0.0;
    double sum = 0.0;
    double err = 0.0;
    for (int n = 0; n < count; ++n) {
      previous = sum;
      sum += (n % 2 == 0) ? magnitude[n] : -magnitude[n];
      err += error[n];
    }
    r.value = 0.5 * (previous + sum);
    r.tail_estimate = 0.5 * magnitude[count - 1];
    r.roundoff = err;
  }
  r.converged = inner_ok && r.tail_estimate <= std::max(cfg.tail_tol, 10.0 * r.roundoff);
  return r;
}

}  // namespace grverify
