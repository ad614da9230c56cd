#ifndef FRACINEQ_ORACLE_HPP
#define FRACINEQ_ORACLE_HPP

#include <cmath>
#include <concepts>

#include "fracineq/operator.hpp"

namespace fracineq {

/// coefficient * t^sigma
template <std::floating_point Scalar = double>
struct MonomialSpec {
  Scalar sigma = 0;
  Scalar coefficient = 1;
};

/// Closed form of the operator (lower terminal 0) applied to t^sigma:
///   rho^{-beta} x^{kappa + rho(eta+alpha) + sigma} Gamma(eta + sigma/rho + 1) / Gamma(eta + alpha + sigma/rho + 1).
/// The substitution u = (t/x)^rho reduces the kernel integral to a Beta function.
template <std::floating_point Scalar>
Scalar monomial_integral(const OperatorParams<Scalar>& params, Scalar sigma, Scalar x) {
  params.validate();
  if (params.lower != 0) throw DomainError("monomial_integral: closed form needs lower terminal 0");
  if (!(x > 0)) throw DomainError("monomial_integral: x must be positive");
  if (!(sigma > -params.rho * (params.eta + 1))) {
    throw DomainError("monomial_integral: sigma <= -rho(eta+1), integral diverges");
  }
  return std::exp(detail::log_power_moment(params, sigma, x));
}

template <std::floating_point Scalar>
Scalar monomial_integral(const OperatorParams<Scalar>& params, const MonomialSpec<Scalar>& mono, Scalar x) {
  return mono.coefficient * monomial_integral(params, mono.sigma, x);
}

/// Riemann-Liouville integral of t^sigma: Gamma(sigma+1)/Gamma(sigma+alpha+1) x^{sigma+alpha}.
template <std::floating_point Scalar>
Scalar rl_monomial(Scalar alpha, Scalar sigma, Scalar x) {
  if (!(alpha > 0) || !(sigma > -1) || !(x > 0)) {
    throw DomainError("rl_monomial: need alpha > 0, sigma > -1, x > 0");
  }
  return std::exp(log_gamma(sigma + 1) - log_gamma(sigma + alpha + 1) + (sigma + alpha) * std::log(x));
}

}  // namespace fracineq

#endif  // FRACINEQ_ORACLE_HPP
