#include "fracineq/specialization_checks.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "fracineq/oracle.hpp"

namespace fracineq {

namespace {

Function power_of_t(double sigma) {
  return make_function<double>([sigma](double t) { return std::pow(t, sigma); }, "t^" + std::to_string(sigma));
}

std::string rho_label(double rho) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "error_rho_%g", rho);
  return buf;
}

}  // namespace

CheckResult riemann_liouville_check(double alpha, double sigma, double x, const QuadOptions& opts) {
  const auto directive = specialize<double>(Specialization::RiemannLiouville);
  const Params params = directive.instantiate(alpha, 1.0);
  CheckResult r;
  r.suite = "specializations";
  r.variant = "riemann_liouville";
  r.params = params;
  r.x = x;
  const double value = left_integral(params, power_of_t(sigma), x, opts);
  const double exact = rl_monomial(alpha, sigma, x);
  r.kind = CheckKind::Identity;
  r.lhs = value;
  r.rhs = exact;
  r.residual = value - exact;
  r.margin = -std::abs(r.residual);
  r.scale = std::abs(exact);
  r.lambda_alpha = lambda_factor(params, x);
  r.extras.push_back({"sigma", sigma});
  return r;
}

CheckResult erdelyi_kober_check(double alpha, double rho, double eta, double sigma, double x,
                                const QuadOptions& opts) {
  const auto directive = specialize<double>(Specialization::ErdelyiKober);
  Params base;
  base.eta = eta;
  const Params params = directive.instantiate(alpha, rho, base);
  CheckResult r;
  r.suite = "specializations";
  r.variant = "erdelyi_kober";
  r.params = params;
  r.x = x;
  const double value = left_integral(params, power_of_t(sigma), x, opts);
  const double shifted = eta + sigma / rho + 1;
  const double exact = std::exp(log_gamma(shifted) - log_gamma(shifted + alpha) + sigma * std::log(x));
  r.kind = CheckKind::Identity;
  r.lhs = value;
  r.rhs = exact;
  r.residual = value - exact;
  r.margin = -std::abs(r.residual);
  r.scale = std::abs(exact);
  r.lambda_alpha = lambda_factor(params, x);
  r.extras.push_back({"sigma", sigma});
  return r;
}

bool LimitSequence::strictly_decreasing() const {
  for (std::size_t i = 1; i < relative_errors.size(); ++i) {
    if (!(relative_errors[i] < relative_errors[i - 1])) return false;
  }
  return !relative_errors.empty();
}

LimitSequence hadamard_limit(double alpha, double nu, double x, const QuadOptions& opts) {
  if (!(x > 1)) throw DomainError("hadamard_limit: x must exceed the terminal 1");
  if (!(nu >= 0)) throw DomainError("hadamard_limit: nu must be non-negative");
  const auto directive = specialize<double>(Specialization::Hadamard);
  const Function f =
      make_function<double>([nu](double t) { return std::pow(std::log(t), nu); }, "(ln t)^" + std::to_string(nu));
  LimitSequence seq;
  const double log_x = std::log(x);
  seq.target = std::exp(log_gamma(nu + 1) - log_gamma(nu + alpha + 1) + (nu + alpha) * std::log(log_x));
  for (double rho : directive.limit->rho_sequence) {
    const double value = left_integral(directive.instantiate(alpha, rho), f, x, opts);
    seq.rho.push_back(rho);
    seq.values.push_back(value);
    seq.relative_errors.push_back(std::abs(value - seq.target) / std::abs(seq.target));
  }
  return seq;
}

CheckResult hadamard_check(double alpha, double nu, double x, const QuadOptions& opts) {
  const LimitSequence seq = hadamard_limit(alpha, nu, x, opts);
  const auto directive = specialize<double>(Specialization::Hadamard);
  CheckResult r;
  r.suite = "specializations";
  r.variant = "hadamard";
  r.kind = CheckKind::Limit;
  r.params = directive.instantiate(alpha, seq.rho.back());
  r.x = x;
  r.lhs = seq.values.back();
  r.rhs = seq.target;
  r.residual = r.lhs - r.rhs;
  r.margin = -std::abs(r.residual);
  r.scale = std::abs(seq.target);
  r.limit_tol = kHadamardLimitTol;
  r.extras.push_back({"nu", nu});
  for (std::size_t i = 0; i < seq.rho.size(); ++i) r.extras.push_back({rho_label(seq.rho[i]), seq.relative_errors[i]});
  r.extras.push_back({"strictly_decreasing", seq.strictly_decreasing() ? 1.0 : 0.0});
  return r;
}

}  // namespace fracineq
