#ifndef FRACINEQ_SAMPLER_HPP
#define FRACINEQ_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fracineq/inequalities.hpp"

namespace fracineq {

enum class FunctionFamily { Polynomial, TrigSeries, PiecewiseLinear };

std::string_view to_string(FunctionFamily family);
FunctionFamily parse_family(std::string_view name);

struct SamplerOptions {
  int grid_points = 4097;
  /// When set, the function is lifted so its certified lower bound is at least this.
  std::optional<double> positivity_floor;
};

/// splitmix64 step: derives independent per-case seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

/// Bounds of f on [0, x] from a uniform grid, padded by the largest
/// neighbouring slope times the spacing.
BoundedFunctionSpec certify_on_grid(Function f, double x, int grid_points = 4097);

/// Seeded random member of a family on [0, x] with grid-certified bounds.
///   polynomial:       sum_k c_k (t/x)^k, k <= degree
///   trig_series:      c_0 + sum_{k<=degree} (a_k sin(k pi t/x) + b_k cos(k pi t/x)) / k
///   piecewise_linear: `degree` linear pieces between random knots
/// Coefficients are uniform in [-1, 1]. Polynomials keep their coefficients
/// in `coefficients` so closed-form oracles can be applied.
struct SampledFunction {
  BoundedFunctionSpec spec;
  FunctionFamily family;
  std::vector<double> coefficients;  // polynomial only, in powers of t (not t/x)
};

SampledFunction function_family_sampler(std::uint64_t seed, FunctionFamily family, int degree, double x,
                                        const SamplerOptions& opts = {});

/// Positive pair for the ratio-bounded suite: f has floor 0.1, g has `g_floor`.
RatioBoundedPair ratio_pair_sampler(std::uint64_t seed, FunctionFamily family, int degree, double x,
                                    double g_floor = 0.5, int grid_points = 4097);

/// Ratio bounds of f/g on [0, x] certified like certify_on_grid; the lower
/// bound is kept at or above half the grid minimum so it stays positive.
RatioBoundedPair certify_ratio(Function f, Function g, double x, int grid_points = 4097);

}  // namespace fracineq

#endif  // FRACINEQ_SAMPLER_HPP
