#ifndef FRACINEQ_ERRORS_HPP
#define FRACINEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracineq {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sampled integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double node)
      : std::runtime_error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

/// Adaptive integration ran out of budget before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// Hypothesis of a check (positivity, certified bounds, eta >= 0) not met.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fracineq

#endif  // FRACINEQ_ERRORS_HPP
