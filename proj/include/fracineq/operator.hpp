#ifndef FRACINEQ_OPERATOR_HPP
#define FRACINEQ_OPERATOR_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracineq/errors.hpp"
#include "fracineq/quadrature.hpp"
#include "fracineq/specfun.hpp"

namespace fracineq {

/// Parameters (alpha, beta, rho, eta, kappa) and lower terminal a of the
/// generalized left-sided fractional integral
///
///   I f(x) = rho^{1-beta} x^kappa / Gamma(alpha)
///            * int_a^x tau^{rho(eta+1)-1} (x^rho - tau^rho)^{alpha-1} f(tau) dtau.
template <std::floating_point Scalar = double>
struct OperatorParams {
  Scalar alpha = 1;
  Scalar beta = 0;
  Scalar rho = 1;
  Scalar eta = 0;
  Scalar kappa = 0;
  Scalar lower = 0;

  /// Evaluation validity: alpha > 0, rho > 0, eta > -1, lower >= 0.
  void validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(rho) || !std::isfinite(eta) ||
        !std::isfinite(kappa) || !std::isfinite(lower)) {
      throw DomainError("OperatorParams: parameters must be finite");
    }
    if (!(alpha > 0)) throw DomainError("OperatorParams: alpha must be positive");
    if (!(rho > 0)) throw DomainError("OperatorParams: rho must be positive");
    if (!(eta > -1)) throw DomainError("OperatorParams: eta must exceed -1");
    if (!(lower >= 0)) throw DomainError("OperatorParams: lower terminal must be non-negative");
  }

  /// Theorem hypotheses used by the inequality checks additionally need eta >= 0.
  void validate_for_inequalities() const {
    validate();
    if (!(eta >= 0)) throw PreconditionError("inequality checks require eta >= 0");
  }

  OperatorParams with_alpha(Scalar order) const {
    OperatorParams copy = *this;
    copy.alpha = order;
    return copy;
  }

  bool operator==(const OperatorParams&) const = default;
};

template <std::floating_point Scalar = double>
struct Interval {
  Scalar lo = 0;
  Scalar hi = std::numeric_limits<Scalar>::infinity();
};

/// A real function sampled pointwise. `breakpoints` lists interior points
/// where the function is not smooth; quadrature panels are split there.
template <std::floating_point Scalar = double>
struct Function1D {
  std::function<Scalar(Scalar)> evaluator;
  Interval<Scalar> domain{};
  std::string label;
  std::vector<Scalar> breakpoints{};

  Scalar operator()(Scalar t) const { return evaluator(t); }
};

template <std::floating_point Scalar = double, typename Fn>
Function1D<Scalar> make_function(Fn&& fn, std::string label, Interval<Scalar> domain = {}) {
  return Function1D<Scalar>{std::function<Scalar(Scalar)>(std::forward<Fn>(fn)), domain, std::move(label), {}};
}

/// Knobs for operator quadrature. `order` is the node count of every panel;
/// `grading_levels` is the number of geometric (ratio 1/4) panels between the
/// smooth end panel and the endpoint where non-smooth behaviour concentrates.
struct QuadOptions {
  int order = 48;
  int grading_levels = 24;
};

namespace detail {

/// ln of rho^{-beta} x^{kappa + rho(eta+alpha) + sigma} Gamma(eta + sigma/rho + 1) / Gamma(eta + alpha + sigma/rho + 1),
/// the operator applied to t^sigma at lower terminal 0.
template <std::floating_point Scalar>
Scalar log_power_moment(const OperatorParams<Scalar>& params, Scalar sigma, Scalar x) {
  const Scalar shifted = params.eta + sigma / params.rho + 1;
  return -params.beta * std::log(params.rho) +
         (params.kappa + params.rho * (params.eta + params.alpha) + sigma) * std::log(x) + log_gamma(shifted) -
         log_gamma(shifted + params.alpha);
}

/// Panel boundaries on [0, end]: 0.5 * 4^{-k} for k = levels..1, then 0.5,
/// with breakpoints merged in. `end` is the start of the weighted end panel;
/// when a breakpoint pushes it toward 1, panels are graded toward `end` too so
/// the (1-u)^{alpha-1} factor never sits just outside a plain panel.
template <std::floating_point Scalar>
std::vector<Scalar> graded_boundaries(int levels, const std::vector<Scalar>& interior, Scalar end) {
  std::vector<Scalar> cuts;
  cuts.reserve(static_cast<std::size_t>(levels) + interior.size() + 2);
  Scalar b = Scalar(0.5);
  for (int k = 0; k < levels; ++k) b /= 4;
  for (int k = levels; k >= 0; --k) {
    cuts.push_back(b);
    b *= 4;
  }
  for (Scalar t : interior) {
    if (t > 0 && t < end) cuts.push_back(t);
  }
  for (Scalar gap = 4 * (1 - end); 1 - gap > Scalar(0.5); gap *= 4) cuts.push_back(1 - gap);
  cuts.push_back(end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

template <std::floating_point Scalar>
void check_sample(Scalar value, Scalar node) {
  if (!std::isfinite(value)) {
    throw EvaluationError("left_integral: non-finite integrand sample", static_cast<double>(node));
  }
}

// a = 0: u = (tau/x)^rho turns the integral into
//   rho^{-beta} x^{kappa + rho(eta+alpha)} / Gamma(alpha) * int_0^1 u^eta (1-u)^{alpha-1} f(x u^{1/rho}) du.
template <std::floating_point Scalar>
Scalar left_integral_origin(const OperatorParams<Scalar>& prm, const Function1D<Scalar>& f, Scalar x,
                            const QuadOptions& opts) {
  auto& cache = RuleCache<Scalar>::global();
  const Scalar inv_rho = 1 / prm.rho;
  auto sample = [&](Scalar u) {
    const Scalar tau = x * std::pow(u, inv_rho);
    const Scalar value = f(tau);
    check_sample(value, tau);
    return value;
  };

  std::vector<Scalar> interior;
  Scalar jacobi_start = Scalar(0.5);
  for (Scalar t : f.breakpoints) {
    if (t > 0 && t < x) {
      const Scalar u = std::pow(t / x, prm.rho);
      interior.push_back(u);
      jacobi_start = std::max(jacobi_start, u);
    }
  }
  const auto cuts = graded_boundaries(opts.grading_levels, interior, jacobi_start);

  Scalar total = 0;
  // [0, cuts[0]]: weight u^eta.
  {
    const auto rule = cache.get(opts.order, Scalar(0), prm.eta);
    const Scalar width = cuts.front();
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < rule->order(); ++i) {
      const Scalar u = width * rule->nodes(i);
      sum += rule->weights(i) * std::pow(1 - u, prm.alpha - 1) * sample(u);
    }
    total += std::pow(width, prm.eta + 1) * sum;
  }
  // Graded and breakpoint panels, plain Gauss-Legendre.
  const auto legendre = cache.get(opts.order, Scalar(0), Scalar(0));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Scalar lo = cuts[k];
    const Scalar width = cuts[k + 1] - lo;
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < legendre->order(); ++i) {
      const Scalar u = lo + width * legendre->nodes(i);
      sum += legendre->weights(i) * std::pow(u, prm.eta) * std::pow(1 - u, prm.alpha - 1) * sample(u);
    }
    total += width * sum;
  }
  // [jacobi_start, 1]: weight (1-u)^{alpha-1}.
  {
    const auto rule = cache.get(opts.order, prm.alpha - 1, Scalar(0));
    const Scalar width = 1 - jacobi_start;
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < rule->order(); ++i) {
      const Scalar u = jacobi_start + width * rule->nodes(i);
      sum += rule->weights(i) * std::pow(u, prm.eta) * sample(u);
    }
    total += std::pow(width, prm.alpha) * sum;
  }
  const Scalar log_prefactor = -prm.beta * std::log(prm.rho) +
                               (prm.kappa + prm.rho * (prm.eta + prm.alpha)) * std::log(x) -
                               log_gamma(prm.alpha);
  return std::exp(log_prefactor) * total;
}

// a > 0: tau = a + (x - a) s. The weakly singular factor (x - tau)^{alpha-1}
// is split off near tau = x; (x^rho - tau^rho) / (x - tau) is evaluated through
// expm1/log1p so it stays accurate as rho -> 0.
template <std::floating_point Scalar>
Scalar left_integral_terminal(const OperatorParams<Scalar>& prm, const Function1D<Scalar>& f, Scalar x,
                              const QuadOptions& opts) {
  auto& cache = RuleCache<Scalar>::global();
  const Scalar a = prm.lower;
  const Scalar d = x - a;
  const Scalar log_x = std::log(x);
  const Scalar tau_exponent = prm.rho * (prm.eta + 1) - 1;

  // ln(x^rho - tau^rho) given tau and gap = x - tau.
  auto log_kernel_difference = [&](Scalar tau, Scalar gap) {
    const Scalar log_ratio = (gap < x / 2) ? std::log1p(-gap / x) : std::log(tau / x);
    return prm.rho * log_x + std::log(-std::expm1(prm.rho * log_ratio));
  };
  auto sample = [&](Scalar tau) {
    const Scalar value = f(tau);
    check_sample(value, tau);
    return value;
  };

  std::vector<Scalar> interior;
  Scalar jacobi_start = Scalar(0.5);
  for (Scalar t : f.breakpoints) {
    if (t > a && t < x) {
      const Scalar s = (t - a) / d;
      interior.push_back(s);
      jacobi_start = std::max(jacobi_start, s);
    }
  }
  const auto cuts = graded_boundaries(opts.grading_levels, interior, jacobi_start);

  Scalar total = 0;
  const auto legendre = cache.get(opts.order, Scalar(0), Scalar(0));
  auto legendre_panel = [&](Scalar lo, Scalar hi) {
    const Scalar width = hi - lo;
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < legendre->order(); ++i) {
      const Scalar s = lo + width * legendre->nodes(i);
      const Scalar tau = a + d * s;
      const Scalar gap = d * (1 - s);
      const Scalar log_weight =
          tau_exponent * std::log(tau) + (prm.alpha - 1) * log_kernel_difference(tau, gap);
      sum += legendre->weights(i) * std::exp(log_weight) * sample(tau);
    }
    return d * width * sum;
  };
  total += legendre_panel(Scalar(0), cuts.front());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) total += legendre_panel(cuts[k], cuts[k + 1]);

  // s in [jacobi_start, 1]: gap = (1 - jacobi_start) d v with weight v^{alpha-1}.
  {
    const auto rule = cache.get(opts.order, Scalar(0), prm.alpha - 1);
    const Scalar span = (1 - jacobi_start) * d;
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < rule->order(); ++i) {
      const Scalar gap = span * rule->nodes(i);
      const Scalar tau = x - gap;
      const Scalar log_weight = tau_exponent * std::log(tau) +
                                (prm.alpha - 1) * (log_kernel_difference(tau, gap) - std::log(gap));
      sum += rule->weights(i) * std::exp(log_weight) * sample(tau);
    }
    total += std::pow(span, prm.alpha) * sum;
  }
  const Scalar log_prefactor = (1 - prm.beta) * std::log(prm.rho) + prm.kappa * log_x - log_gamma(prm.alpha);
  return std::exp(log_prefactor) * total;
}

}  // namespace detail

/// Value of the operator on the constant 1 at lower terminal 0:
/// Gamma(eta+1)/Gamma(eta+alpha+1) * rho^{-beta} * x^{kappa + rho(eta+alpha)}.
template <std::floating_point Scalar>
Scalar lambda_factor(const OperatorParams<Scalar>& params, Scalar x) {
  params.validate();
  if (!(x > 0)) throw DomainError("lambda_factor: x must be positive");
  return std::exp(detail::log_power_moment(params, Scalar(0), x));
}

/// Left-sided generalized fractional integral of f evaluated at x.
///
/// Lower terminal 0 is integrated in u = (tau/x)^rho with Gauss-Jacobi end
/// panels carrying u^eta and (1-u)^{alpha-1}; the panels in between are graded
/// geometrically toward u = 0, where f(x u^{1/rho}) is typically not smooth.
/// A positive lower terminal is integrated in tau directly.
template <std::floating_point Scalar>
Scalar left_integral(const OperatorParams<Scalar>& params, const Function1D<Scalar>& f, Scalar x,
                     const QuadOptions& opts = {}) {
  params.validate();
  if (!std::isfinite(x) || !(x > params.lower)) {
    throw DomainError("left_integral: x must exceed the lower terminal");
  }
  if (opts.order < 1 || opts.grading_levels < 0) throw DomainError("left_integral: invalid quadrature options");
  if (params.lower == 0) return detail::left_integral_origin(params, f, x, opts);
  return detail::left_integral_terminal(params, f, x, opts);
}

/// Right-sided generalized fractional integral on [x, upper]:
///   rho^{1-beta} x^{rho eta} / Gamma(alpha) * int_x^b tau^{kappa+rho-1} (tau^rho - x^rho)^{alpha-1} f(tau) dtau,
/// via v = (tau^rho - x^rho)/(b^rho - x^rho) and one Gauss-Jacobi rule with weight v^{alpha-1}.
template <std::floating_point Scalar>
Scalar right_integral(const OperatorParams<Scalar>& params, const Function1D<Scalar>& f, Scalar x, Scalar upper,
                      const QuadOptions& opts = {}) {
  params.validate();
  if (!(x >= 0) || !std::isfinite(upper) || !(x < upper)) {
    throw DomainError("right_integral: need 0 <= x < upper");
  }
  const Scalar x_rho = std::pow(x, params.rho);
  const Scalar span = std::pow(upper, params.rho) - x_rho;
  const auto rule = RuleCache<Scalar>::global().get(opts.order, Scalar(0), params.alpha - 1);
  const Scalar inv_rho = 1 / params.rho;
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < rule->order(); ++i) {
    const Scalar tau = std::pow(x_rho + span * rule->nodes(i), inv_rho);
    const Scalar value = std::pow(tau, params.kappa) * f(tau);
    if (!std::isfinite(value)) {
      throw EvaluationError("right_integral: non-finite integrand sample", static_cast<double>(tau));
    }
    sum += rule->weights(i) * value;
  }
  const Scalar prefactor = std::pow(params.rho, -params.beta) * std::pow(x, params.rho * params.eta) *
                           std::pow(span, params.alpha) * std::exp(-log_gamma(params.alpha));
  return prefactor * sum;
}

/// Norm of the weighted space X^p_c(lo, hi):
/// (int_lo^hi |t^c f(t)|^p dt/t)^{1/p}, or for p = infinity the maximum of
/// t^c |f(t)| over a uniform grid of `grid_points` points (an approximation of
/// the essential supremum).
template <std::floating_point Scalar>
Scalar xpc_norm(const Function1D<Scalar>& f, Scalar p, Scalar c, Scalar lo, Scalar hi, int grid_points = 10001,
                Scalar tol = Scalar(1e-12)) {
  if (!(p >= 1)) throw DomainError("xpc_norm: p must be >= 1");
  if (!(lo > 0)) throw DomainError("xpc_norm: lo must be positive");
  if (!(lo < hi)) throw DomainError("xpc_norm: need lo < hi");
  if (std::isinf(p)) {
    if (grid_points < 2) throw DomainError("xpc_norm: grid needs at least two points");
    Scalar best = 0;
    for (int i = 0; i < grid_points; ++i) {
      const Scalar t = lo + (hi - lo) * Scalar(i) / Scalar(grid_points - 1);
      best = std::max(best, std::pow(t, c) * std::abs(f(t)));
    }
    return best;
  }
  const Scalar integral = reference_integrate(
      [&](Scalar t) { return std::pow(std::abs(std::pow(t, c) * f(t)), p) / t; }, lo, hi, tol);
  return std::pow(integral, 1 / p);
}

// ---------------------------------------------------------------------------
// Classical special cases

enum class Specialization { RiemannLiouville, Hadamard, ErdelyiKober, Katugampola, Weyl, Liouville };

enum class LimitKind { RhoToOne, RhoToZeroPlus };

template <std::floating_point Scalar = double>
struct LimitDirective {
  LimitKind kind;
  Scalar limit_point;
  /// Finite rho values approaching the limit point; distance to it strictly decreases.
  std::vector<Scalar> rho_sequence;
};

/// Fixed fields of a specialization; unset fields stay free.
template <std::floating_point Scalar = double>
struct ParamTemplate {
  std::optional<Scalar> beta;
  std::optional<Scalar> eta;
  std::optional<Scalar> kappa;
  std::optional<Scalar> lower;
  bool beta_equals_alpha = false;
  bool kappa_erdelyi_kober = false;  ///< kappa = -rho (alpha + eta)
};

template <std::floating_point Scalar = double>
struct SpecializationDirective {
  Specialization name;
  ParamTemplate<Scalar> params;
  std::optional<LimitDirective<Scalar>> limit;
  bool numeric = true;

  /// Concrete parameters: free fields from `base`, order alpha and rho given.
  OperatorParams<Scalar> instantiate(Scalar alpha, Scalar rho, OperatorParams<Scalar> base = {}) const {
    if (!numeric) throw DomainError("specialization has no numeric evaluation (semi-infinite domain)");
    base.alpha = alpha;
    base.rho = rho;
    if (params.beta) base.beta = *params.beta;
    if (params.eta) base.eta = *params.eta;
    if (params.kappa) base.kappa = *params.kappa;
    if (params.lower) base.lower = *params.lower;
    if (params.beta_equals_alpha) base.beta = alpha;
    if (params.kappa_erdelyi_kober) base.kappa = -rho * (alpha + base.eta);
    return base;
  }
};

inline constexpr std::string_view to_string(Specialization s) {
  switch (s) {
    case Specialization::RiemannLiouville: return "riemann_liouville";
    case Specialization::Hadamard: return "hadamard";
    case Specialization::ErdelyiKober: return "erdelyi_kober";
    case Specialization::Katugampola: return "katugampola";
    case Specialization::Weyl: return "weyl";
    case Specialization::Liouville: return "liouville";
  }
  return "unknown";
}

inline Specialization parse_specialization(std::string_view name) {
  for (auto s : {Specialization::RiemannLiouville, Specialization::Hadamard, Specialization::ErdelyiKober,
                 Specialization::Katugampola, Specialization::Weyl, Specialization::Liouville}) {
    if (to_string(s) == name) return s;
  }
  throw DomainError("unknown specialization: " + std::string(name));
}

/// Parameter template and limit directive reducing the generalized operator
/// to a classical fractional integral.
template <std::floating_point Scalar = double>
SpecializationDirective<Scalar> specialize(Specialization name) {
  const LimitDirective<Scalar> to_one{LimitKind::RhoToOne, Scalar(1), {Scalar(1.1), Scalar(1.01), Scalar(1.001)}};
  const LimitDirective<Scalar> to_zero{LimitKind::RhoToZeroPlus, Scalar(0),
                                       {Scalar(1e-1), Scalar(1e-2), Scalar(1e-3)}};
  SpecializationDirective<Scalar> d{name, {}, std::nullopt, true};
  switch (name) {
    case Specialization::RiemannLiouville:
      d.params.kappa = 0;
      d.params.eta = 0;
      d.limit = to_one;
      break;
    case Specialization::Hadamard:
      d.params.beta_equals_alpha = true;
      d.params.kappa = 0;
      d.params.eta = 0;
      d.params.lower = 1;
      d.limit = to_zero;
      break;
    case Specialization::ErdelyiKober:
      d.params.beta = 0;
      d.params.kappa_erdelyi_kober = true;
      break;
    case Specialization::Katugampola:
      d.params.beta_equals_alpha = true;
      d.params.kappa = 0;
      d.params.eta = 0;
      break;
    case Specialization::Weyl:
      d.params.kappa = 0;
      d.params.eta = 0;
      d.params.lower = -std::numeric_limits<Scalar>::infinity();
      d.limit = to_one;
      d.numeric = false;
      break;
    case Specialization::Liouville:
      d.params.kappa = 0;
      d.params.eta = 0;
      d.params.lower = 0;
      d.limit = to_one;
      break;
  }
  return d;
}

template <std::floating_point Scalar = double>
SpecializationDirective<Scalar> specialize(std::string_view name) {
  return specialize<Scalar>(parse_specialization(name));
}

}  // namespace fracineq

#endif  // FRACINEQ_OPERATOR_HPP
