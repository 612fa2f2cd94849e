#pragma once

// One-dimensional quadrature for finite intervals, semi-infinite ranges and
// inverse-square-root endpoint singularities.
//
//   * finite interval, no flagged endpoint  -> globally adaptive Gauss-Kronrod (7/15)
//   * finite interval, flagged endpoint(s)  -> tanh-sinh, refined level by level
//   * [a, +inf)                             -> exp-sinh, refined level by level
//
// Evaluators are either f(x) or f(x, dl, du), where dl = x - lower and
// du = upper - x. The double-exponential rules generate the distance to the
// nearest endpoint exactly, so an evaluator that forms (1 - x) as du keeps full
// relative precision arbitrarily close to a singular endpoint. A plain f(x)
// loses that precision near endpoints other than the origin.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace grverify {

using Complex = std::complex<double>;
using Clock = std::chrono::steady_clock;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Which endpoints carry an integrable inverse-square-root singularity.
enum class Singular : unsigned { none = 0, lower = 1, upper = 2, both = 3 };

class Interval {
 public:
  Interval(double lower, double upper, Singular singular = Singular::none)
      : lower_(lower), upper_(upper), singular_(singular) {
    if (!std::isfinite(lower)) {
      throw std::invalid_argument("Interval: lower limit must be finite");
    }
    if (!(lower < upper)) {
      throw std::invalid_argument("Interval: requires lower < upper");
    }
    if (std::isnan(upper) || (std::isinf(upper) && singular_upper())) {
      throw std::invalid_argument("Interval: a singular upper endpoint must be finite");
    }
  }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  bool semi_infinite() const noexcept { return std::isinf(upper_); }
  bool singular_lower() const noexcept {
    return (static_cast<unsigned>(singular_) & 1u) != 0;
  }
  bool singular_upper() const noexcept {
    return (static_cast<unsigned>(singular_) & 2u) != 0;
  }

 private:
  double lower_;
  double upper_;
  Singular singular_;
};

struct QuadratureConfig {
  double abs_tol = 1e-12;
  long max_evals = 200000;
  /// Cooperative cancellation: past this instant the engine stops refining
  /// and reports converged = false.
  std::optional<Clock::time_point> deadline;

  void validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be > 0");
    if (max_evals < 15) throw std::invalid_argument("QuadratureConfig: max_evals must be >= 15");
  }
  bool expired() const { return deadline && Clock::now() >= *deadline; }
};

template <class V = double>
struct QuadratureResult {
  V value{};
  double error_estimate = 0.0;
  long evals = 0;
  bool converged = false;
};

/// The integrand returned a non-finite value away from any flagged singular endpoint.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double x) : std::runtime_error(what), x_(x) {}
  double where() const noexcept { return x_; }

 private:
  double x_;
};

template <class F>
concept EndpointAwareIntegrand = std::invocable<F&, double, double, double>;

template <class F>
concept PlainIntegrand = std::invocable<F&, double>;

template <class F>
concept Integrand = EndpointAwareIntegrand<F> || PlainIntegrand<F>;

namespace detail {

template <class F>
struct integrand_value {
  using type = std::decay_t<std::invoke_result_t<F&, double>>;
};
template <EndpointAwareIntegrand F>
struct integrand_value<F> {
  using type = std::decay_t<std::invoke_result_t<F&, double, double, double>>;
};
template <class F>
using integrand_value_t = typename integrand_value<F>::type;

template <class F>
auto call(F& f, double x, double dl, double du) {
  if constexpr (EndpointAwareIntegrand<F>) {
    return f(x, dl, du);
  } else {
    return f(x);
  }
}

inline bool finite_value(double v) noexcept { return std::isfinite(v); }
inline bool finite_value(const Complex& v) noexcept {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kKronrodNodes[1], [3], [5], [7].
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
  double a;
  double b;
  V value;
  double error;
};

template <class V, class F>
Panel<V> kronrod_panel(F& f, double a, double b, double lo, double hi) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto eval = [&](double x) -> V {
    V y = call(f, x, x - lo, hi - x);
    if (!finite_value(y)) {
      throw EvaluationError("integrand is not finite at x = " + std::to_string(x), x);
    }
    return y;
  };
  const V fc = eval(center);
  V kronrod = kKronrodWeights[7] * fc;
  V gauss = kGaussWeights[3] * fc;
  double resabs = kKronrodWeights[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const V f1 = eval(center - dx);
    const V f2 = eval(center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    resabs += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  const double width = std::abs(half);
  const double err =
      std::max(std::abs(half * (kronrod - gauss)), 50.0 * kEps * width * resabs);
  return {a, b, half * kronrod, err};
}

template <class V, class F>
QuadratureResult<V> gauss_kronrod(F& f, double lo, double hi, const QuadratureConfig& cfg) {
  auto by_error = [](const Panel<V>& x, const Panel<V>& y) { return x.error < y.error; };
  std::vector<Panel<V>> heap;
  heap.push_back(kronrod_panel<V>(f, lo, hi, lo, hi));
  long evals = 15;
  double total_err = heap.front().error;
  bool converged = total_err <= cfg.abs_tol;

  while (!converged && evals + 30 <= cfg.max_evals && !cfg.expired()) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel<V> worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;  // cannot bisect further in double precision
    }
    heap.pop_back();
    heap.push_back(kronrod_panel<V>(f, worst.a, mid, lo, hi));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(kronrod_panel<V>(f, mid, worst.b, lo, hi));
    std::push_heap(heap.begin(), heap.end(), by_error);
    evals += 30;

    total_err = 0.0;
    for (const auto& p : heap) total_err += p.error;
    converged = total_err <= cfg.abs_tol;
  }

  // Sum the smallest contributions first.
  std::sort(heap.begin(), heap.end(), by_error);
  V value{};
  for (const auto& p : heap) value += p.value;
  return {value, total_err, evals, converged};
}

// ---------------------------------------------------------------------------
// Double-exponential rules

struct DeNode {
  double x;
  double dl;  // x - lower (exact when generated near the lower end)
  double du;  // upper - x (exact when generated near the upper end)
  double weight;
};

// tanh-sinh on [lo, hi]: x = c + h tanh(pi/2 sinh t).
inline std::optional<DeNode> tanh_sinh_node(double t, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double cu = std::cosh(u);
  const double weight = half * 0.5 * std::numbers::pi * std::cosh(t) / (cu * cu);
  // 1 - tanh|u| = e^{-|u|} / cosh u, free of cancellation.
  const double gap = half * std::exp(-std::abs(u)) / cu;
  if (!(gap > 0.0) || !(weight > 0.0)) return std::nullopt;
  if (t < 0.0) return DeNode{lo + gap, gap, (hi - lo) - gap, weight};
  if (t > 0.0) return DeNode{hi - gap, (hi - lo) - gap, gap, weight};
  return DeNode{lo + half, half, half, weight};
}

// exp-sinh on [lo, inf): x = lo + exp(pi/2 sinh t).
inline std::optional<DeNode> exp_sinh_node(double t, double lo) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double dl = std::exp(u);
  const double weight = 0.5 * std::numbers::pi * std::cosh(t) * dl;
  if (!(dl > 0.0) || !std::isfinite(weight) || !std::isfinite(lo + dl)) return std::nullopt;
  return DeNode{lo + dl, dl, kInfinity, weight};
}

struct DeRange {
  double t_lo;
  double t_hi;
};

// Beyond these abscissae the transformed integrand of any function with at
// worst an inverse-square-root endpoint singularity (or x^{-3/2} decay at
// infinity) is below 1e-25 relative to the node spacing.
inline constexpr DeRange kTanhSinhRange{-4.5, 4.5};
inline constexpr DeRange kExpSinhRange{-5.0, 5.5};
inline constexpr int kDeMinLevel = 3;
inline constexpr int kDeMaxLevel = 12;

template <class V, class F, class NodeFn>
QuadratureResult<V> double_exponential(F& f, NodeFn node_at, DeRange range, const Interval& iv,
                                       const QuadratureConfig& cfg) {
  const double lo = iv.lower();
  const double hi = iv.upper();
  const double drop_zone = std::sqrt(kEps) * (iv.semi_infinite() ? 1.0 : (hi - lo));
  const bool plain = !EndpointAwareIntegrand<F>;

  long evals = 0;
  auto sample = [&](double t) -> V {
    const auto node = node_at(t);
    if (!node) return V{};
    // A plain evaluator must never see the endpoint itself.
    if (plain && (node->x <= lo || node->x >= hi)) return V{};
    ++evals;
    V y = call(f, node->x, node->dl, node->du);
    if (finite_value(y)) return node->weight * y;
    const bool near_lower = node->dl <= node->du;
    const double gap = near_lower ? node->dl : node->du;
    const bool flagged = near_lower ? iv.singular_lower() : iv.singular_upper();
    if (flagged && gap <= drop_zone) return V{};
    throw EvaluationError("integrand is not finite at x = " + std::to_string(node->x), node->x);
  };

  auto nodes_on_level = [&](int level) -> long {
    const double h = std::ldexp(1.0, -level);
    const long n = static_cast<long>((range.t_hi - range.t_lo) / h) + 1;
    return level == 0 ? n : n / 2;
  };

  // Level 0: h = 1 over the integer grid.
  V sum{};
  for (double t = std::ceil(range.t_lo); t <= range.t_hi; t += 1.0) sum += sample(t);
  V estimate = sum;
  V previous = estimate;
  double error = kInfinity;
  bool converged = false;

  for (int level = 1; level <= kDeMaxLevel; ++level) {
    if (evals + nodes_on_level(level) > cfg.max_evals || cfg.expired()) break;
    const double h = std::ldexp(1.0, -level);
    const double first = std::ceil(range.t_lo / h) * h;
    long index = static_cast<long>(std::llround(first / h));
    V added{};
    for (double t = first; t <= range.t_hi; t = static_cast<double>(++index) * h) {
      if ((index & 1) != 0) added += sample(t);
    }
    sum += added;
    previous = estimate;
    estimate = h * sum;
    error = std::abs(estimate - previous);
    if (level >= kDeMinLevel && error <= cfg.abs_tol) {
      converged = true;
      break;
    }
  }
  return {estimate, error, evals, converged};
}

}  // namespace detail

/// Integrates f over iv. Real- or complex-valued integrands are supported;
/// the value type follows the evaluator's return type.
///
/// On non-convergence the best estimate is still returned with
/// converged = false. Throws EvaluationError when f is non-finite at a node
/// that is not in the immediate neighbourhood of a flagged singular endpoint.
template <Integrand F>
auto integrate(F&& f, const Interval& iv, const QuadratureConfig& cfg = {}) {
  using V = std::conditional_t<std::is_same_v<detail::integrand_value_t<F>, Complex>, Complex,
                               double>;
  cfg.validate();
  auto& fn = f;
  const double lo = iv.lower();
  const double hi = iv.upper();
  if (iv.semi_infinite()) {
    return detail::double_exponential<V>(
        fn, [lo](double t) { return detail::exp_sinh_node(t, lo); }, detail::kExpSinhRange, iv,
        cfg);
  }
  if (iv.singular_lower() || iv.singular_upper()) {
    return detail::double_exponential<V>(
        fn, [lo, hi](double t) { return detail::tanh_sinh_node(t, lo, hi); },
        detail::kTanhSinhRange, iv, cfg);
  }
  return detail::gauss_kronrod<V>(fn, lo, hi, cfg);
}

/// Integral of a complex-valued function of a real parameter.
template <Integrand F>
  requires std::same_as<detail::integrand_value_t<F>, Complex>
QuadratureResult<Complex> integrate_complex(F&& f, const Interval& iv,
                                            const QuadratureConfig& cfg = {}) {
  return integrate(std::forward<F>(f), iv, cfg);
}

}  // namespace grverify
