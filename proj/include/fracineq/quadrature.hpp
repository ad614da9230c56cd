#ifndef FRACINEQ_QUADRATURE_HPP
#define FRACINEQ_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <limits>
#include <tuple>
#include <vector>

#include "fracineq/errors.hpp"
#include "fracineq/specfun.hpp"
#include "fracineq/tridiagonal.hpp"

namespace fracineq {

/// n-point Gaussian rule on (0, 1) for the weight u^q (1 - u)^p.
template <std::floating_point Scalar>
struct QuadratureRule {
  Scalar p = 0;  ///< exponent on (1 - u)
  Scalar q = 0;  ///< exponent on u
  VectorX<Scalar> nodes;
  VectorX<Scalar> weights;

  Eigen::Index order() const { return nodes.size(); }
};

/// Golub-Welsch construction of the Gauss-Jacobi rule on (0, 1) with weight
/// u^q (1 - u)^p: recurrence coefficients of the monic Jacobi family mapped
/// from (-1, 1), eigen-decomposition of the Jacobi matrix, weights from the
/// squared first eigenvector components times the total mass B(q+1, p+1).
template <std::floating_point Scalar>
QuadratureRule<Scalar> gauss_jacobi_rule(int n, Scalar p, Scalar q) {
  if (n < 1) throw DomainError("gauss_jacobi_rule: n must be >= 1");
  if (!(p > -1) || !(q > -1)) throw DomainError("gauss_jacobi_rule: exponents must exceed -1");

  // On (-1, 1) the weight is (1 - x)^a (1 + x)^b with a = p, b = q.
  const Scalar a = p;
  const Scalar b = q;
  const Scalar ab = a + b;
  VectorX<Scalar> diag(n);
  VectorX<Scalar> off(n - 1);
  for (int k = 0; k < n; ++k) {
    Scalar alpha_k;
    if (k == 0) {
      alpha_k = (b - a) / (ab + 2);
    } else {
      const Scalar s = 2 * Scalar(k) + ab;
      alpha_k = (b - a) * ab / (s * (s + 2));
    }
    diag(k) = (1 + alpha_k) / 2;
  }
  for (int k = 1; k < n; ++k) {
    Scalar beta_k;
    if (k == 1) {
      beta_k = 4 * (1 + a) * (1 + b) / ((2 + ab) * (2 + ab) * (3 + ab));
    } else {
      const Scalar kk = Scalar(k);
      const Scalar s = 2 * kk + ab;
      beta_k = 4 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1) * (s - 1));
    }
    off(k - 1) = std::sqrt(beta_k) / 2;
  }

  const auto spectrum = tridiagonal_eigen<Scalar>(diag, off);
  const Scalar mass = beta<Scalar>(q + 1, p + 1);
  QuadratureRule<Scalar> rule;
  rule.p = p;
  rule.q = q;
  rule.nodes = spectrum.eigenvalues;
  rule.weights = mass * spectrum.first_components.array().square().matrix();
  return rule;
}

/// Gauss-Legendre rule on (0, 1).
template <std::floating_point Scalar>
QuadratureRule<Scalar> gauss_legendre_rule(int n) {
  return gauss_jacobi_rule<Scalar>(n, 0, 0);
}

/// Sum of weight_i * g(node_i); a non-finite sample throws EvaluationError.
template <std::floating_point Scalar, typename Fn>
Scalar integrate_weighted(const QuadratureRule<Scalar>& rule, Fn&& g) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < rule.order(); ++i) {
    const Scalar value = g(rule.nodes(i));
    if (!std::isfinite(value)) {
      throw EvaluationError("integrate_weighted: non-finite integrand", static_cast<double>(rule.nodes(i)));
    }
    sum += rule.weights(i) * value;
  }
  return sum;
}

/// Thread-safe memo of Gauss-Jacobi rules keyed by (n, p, q).
template <std::floating_point Scalar>
class RuleCache {
 public:
  std::shared_ptr<const QuadratureRule<Scalar>> get(int n, Scalar p, Scalar q) {
    const auto key = std::make_tuple(n, p, q);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = rules_.find(key); it != rules_.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadratureRule<Scalar>>(gauss_jacobi_rule<Scalar>(n, p, q));
    std::lock_guard<std::mutex> lock(mutex_);
    return rules_.try_emplace(key, std::move(rule)).first->second;
  }

  static RuleCache& global() {
    static RuleCache cache;
    return cache;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, Scalar, Scalar>, std::shared_ptr<const QuadratureRule<Scalar>>> rules_;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on (-1, 1), from QUADPACK.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::floating_point Scalar>
struct Panel {
  Scalar lo;
  Scalar hi;
  Scalar value;
  Scalar error;
  Scalar raw;     // unextrapolated Kronrod value
  Scalar factor;  // endpoint correction applied to raw
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <std::floating_point Scalar, typename Fn>
Panel<Scalar> kronrod_panel(Fn& f, Scalar lo, Scalar hi) {
  const Scalar center = (lo + hi) / 2;
  const Scalar half = (hi - lo) / 2;
  auto sample = [&](Scalar t) {
    const Scalar v = f(t);
    if (!std::isfinite(v)) {
      throw EvaluationError("reference_integrate: non-finite integrand", static_cast<double>(t));
    }
    return v;
  };
  std::array<Scalar, 15> values;
  values[7] = sample(center);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    values[j] = sample(center - dx);
    values[14 - j] = sample(center + dx);
  }
  Scalar kronrod = values[7] * Scalar(kKronrodWeights[7]);
  Scalar gauss = values[7] * Scalar(kGaussWeights[3]);
  Scalar abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const Scalar pair = values[j] + values[14 - j];
    kronrod += Scalar(kKronrodWeights[j]) * pair;
    abs_sum += Scalar(kKronrodWeights[j]) * (std::abs(values[j]) + std::abs(values[14 - j]));
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * pair;
  }
  // QUADPACK error scaling: |K - G| is pessimistic once the rule converges.
  const Scalar mean = kronrod / 2;
  Scalar asc = Scalar(kKronrodWeights[7]) * std::abs(values[7] - mean);
  for (int j = 0; j < 7; ++j) {
    asc += Scalar(kKronrodWeights[j]) * (std::abs(values[j] - mean) + std::abs(values[14 - j] - mean));
  }
  asc *= std::abs(half);
  abs_sum *= std::abs(half);
  Scalar error = std::abs((kronrod - gauss) * half);
  if (asc != 0 && error != 0) error = asc * std::min(Scalar(1), std::pow(200 * error / asc, Scalar(1.5)));
  const Scalar floor = 50 * std::numeric_limits<Scalar>::epsilon() * abs_sum;
  error = std::max(error, floor);
  const Scalar value = kronrod * half;
  return {lo, hi, value, error, value, 1};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// Panels touching lo or hi are split at a quarter of their width toward that
/// endpoint, so algebraic endpoint singularities get geometric grading with
/// ratio 1/4; interior panels are bisected. Stops when the summed error
/// estimate is below max(tol * |estimate|, abs_tol). Independent of
/// gauss_jacobi_rule.
template <std::floating_point Scalar, typename Fn>
Scalar reference_integrate(Fn&& f, Scalar lo, Scalar hi, Scalar tol, Scalar abs_tol = 0,
                           int max_panels = 4000) {
  if (!(lo < hi)) throw DomainError("reference_integrate: need lo < hi");
  if (!(tol > 0)) throw DomainError("reference_integrate: tol must be positive");

  std::priority_queue<detail::Panel<Scalar>> panels;
  std::vector<detail::Panel<Scalar>> frozen;
  Scalar total = 0;
  Scalar error = 0;
  auto push = [&](Scalar a, Scalar b) {
    auto panel = detail::kronrod_panel<Scalar>(f, a, b);
    total += panel.value;
    error += panel.error;
    panels.push(panel);
  };
  push(lo, hi);
  int count = 1;
  const Scalar roundoff = 50 * std::numeric_limits<Scalar>::epsilon();
  while (error > std::max(tol * std::abs(total), abs_tol) && error > roundoff * std::abs(total)) {
    if (count >= max_panels || panels.empty()) {
      throw ConvergenceError("reference_integrate: panel budget exhausted", static_cast<double>(total),
                             static_cast<double>(error));
    }
    const auto worst = panels.top();
    panels.pop();
    Scalar split;
    const bool touches_lo = worst.lo == lo;
    const bool touches_hi = worst.hi == hi;
    if (touches_lo && !touches_hi) {
      split = worst.lo + (worst.hi - worst.lo) / 4;
    } else if (touches_hi && !touches_lo) {
      split = worst.hi - (worst.hi - worst.lo) / 4;
    } else {
      split = (worst.lo + worst.hi) / 2;
    }
    // Narrower children would put the outer Kronrod abscissae on the panel
    // ends; such a panel keeps its estimate and error and is not revisited.
    const Scalar resolution =
        512 * std::numeric_limits<Scalar>::epsilon() * std::max(std::abs(worst.lo), std::abs(worst.hi));
    if (!(std::min(split - worst.lo, worst.hi - split) > resolution)) {
      frozen.push_back(worst);
      continue;
    }
    total -= worst.value;
    error -= worst.error;
    auto left = detail::kronrod_panel<Scalar>(f, worst.lo, split);
    auto right = detail::kronrod_panel<Scalar>(f, split, worst.hi);
    if (touches_lo != touches_hi) {
      auto& edge = touches_lo ? left : right;
      const auto& inner = touches_lo ? right : left;
      // A power-law endpoint singularity is scale invariant, so the Kronrod
      // rule has the same relative error on the parent and on the endpoint
      // child. The inner child is accurate; the ratio below recovers that
      // error and divides it out of the endpoint child.
      const Scalar factor = inner.raw / (worst.raw - edge.raw);
      if (std::isfinite(factor) && factor > Scalar(0.1) && factor < Scalar(10)) {
        const Scalar drift = std::abs(factor - worst.factor) + inner.error / std::abs(inner.raw);
        edge.value = factor * edge.raw;
        edge.factor = factor;
        edge.error = std::max(drift, 50 * std::numeric_limits<Scalar>::epsilon()) * std::abs(edge.value);
      }
    }
    total += left.value + right.value;
    error += left.error + right.error;
    panels.push(left);
    panels.push(right);
    ++count;
    // Re-summing bounds drift in the running totals.
    if (count % 64 == 0) {
      auto copy = panels;
      total = 0;
      error = 0;
      for (const auto& panel : frozen) {
        total += panel.value;
        error += panel.error;
      }
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

}  // namespace fracineq

#endif  // FRACINEQ_QUADRATURE_HPP
