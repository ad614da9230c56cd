#ifndef FRACINEQ_SPECIALIZATION_CHECKS_HPP
#define FRACINEQ_SPECIALIZATION_CHECKS_HPP

#include <vector>

#include "fracineq/inequalities.hpp"

namespace fracineq {

/// Final relative error allowed for the Hadamard limit at the smallest rho.
inline constexpr double kHadamardLimitTol = 1e-2;

/// Riemann-Liouville specialization at rho = 1 on t^sigma against its closed form.
CheckResult riemann_liouville_check(double alpha, double sigma, double x, const QuadOptions& opts = {});

/// Erdelyi-Kober specialization on t^sigma against
/// Gamma(eta + sigma/rho + 1) / Gamma(eta + alpha + sigma/rho + 1) x^sigma.
CheckResult erdelyi_kober_check(double alpha, double rho, double eta, double sigma, double x,
                                const QuadOptions& opts = {});

struct LimitSequence {
  std::vector<double> rho;
  std::vector<double> values;
  std::vector<double> relative_errors;
  double target = 0;

  bool strictly_decreasing() const;
};

/// Hadamard specialization (beta = alpha, eta = kappa = 0, a = 1) on (ln t)^nu
/// along the directive's rho sequence, against
/// Gamma(nu+1)/Gamma(nu+alpha+1) (ln x)^{nu+alpha}. Needs x > 1.
LimitSequence hadamard_limit(double alpha, double nu, double x, const QuadOptions& opts = {});

/// hadamard_limit packaged as a Limit-kind result; extras hold the error per rho.
CheckResult hadamard_check(double alpha, double nu, double x, const QuadOptions& opts = {});

}  // namespace fracineq

#endif  // FRACINEQ_SPECIALIZATION_CHECKS_HPP
