#ifndef FRACINEQ_FUNCTION_SPEC_HPP
#define FRACINEQ_FUNCTION_SPEC_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracineq/inequalities.hpp"

namespace fracineq {

/// Builtin function accepted on the command line:
///   const:c          c
///   pow:s[*c]        c t^s
///   poly:c0,c1,...   c0 + c1 t + ...
///   sin:a,b          a + b sin t
///   exp:a,b          a + b exp t
struct FunctionSpec {
  enum class Kind { Const, Pow, Poly, Sin, Exp };
  Kind kind = Kind::Const;
  std::vector<double> values;
  std::string text;

  Function function() const;
  /// Sum of c_k t^{s_k} when the spec is a finite sum of powers.
  std::optional<std::vector<std::pair<double, double>>> monomials() const;
};

/// Throws DomainError with a message naming the offending token.
FunctionSpec parse_function_spec(std::string_view text);

}  // namespace fracineq

#endif  // FRACINEQ_FUNCTION_SPEC_HPP
