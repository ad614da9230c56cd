#ifndef FRACINEQ_INEQUALITIES_HPP
#define FRACINEQ_INEQUALITIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracineq/operator.hpp"

namespace fracineq {

using Params = OperatorParams<double>;
using Function = Function1D<double>;

struct Certification {
  enum class Kind { Analytic, Grid };
  Kind kind = Kind::Analytic;
  int grid_size = 0;
  double padding = 0;
};

/// f together with bounds m <= f <= M on [0, x].
struct BoundedFunctionSpec {
  Function f;
  double m = 0;
  double M = 0;
  Certification certification{};
};

/// Positive pair with m_ratio <= f/g <= M_ratio and g >= g_floor on [0, x].
struct RatioBoundedPair {
  Function f;
  Function g;
  double m_ratio = 0;
  double M_ratio = 0;
  double g_floor = 0;
};

/// Conjugate exponents, 1/p + 1/q = 1.
struct YoungExponents {
  double p = 2;
  double q = 2;

  static YoungExponents from_p(double p);
  void validate() const;
};

struct NamedValue {
  std::string name;
  double value = 0;
};

enum class CheckKind {
  Inequality,  ///< passes when margin >= -margin_tol * scale
  Identity,    ///< passes when |residual| <= identity_tol * scale
  Limit,       ///< passes when |residual| <= limit_tol * scale and the error sequence decreases
};

/// One evaluation of an identity or inequality.
///
/// For inequalities margin is (larger side) - (smaller side) and residual is 0;
/// for identities residual = lhs - rhs and margin = -|residual|. `scale` is
/// the magnitude the tolerances are relative to; `extras` carries secondary
/// quantities such as alternative forms of the same statement.
struct CheckResult {
  std::string case_id;
  std::string suite;
  std::string variant;
  CheckKind kind = CheckKind::Inequality;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  double residual = 0;
  double scale = 0;
  double lambda_alpha = 0;
  std::optional<double> lambda_gamma;
  Params params{};
  std::optional<double> gamma;
  double x = 0;
  std::uint64_t seed = 0;
  double limit_tol = 0;
  std::vector<NamedValue> extras;

  std::optional<double> extra(std::string_view name) const;
};

enum class GrussVariant { AsPrinted, Quarter };
enum class YoungItem { T3_1, T3_2, T3_3, T3_4, T4_1, T4_2, T4_3 };
enum class PolyaItem { T5_1, T5_2, T5_3 };

std::string_view to_string(GrussVariant v);
std::string_view to_string(YoungItem item);
std::string_view to_string(PolyaItem item);

inline constexpr YoungItem kYoungItems[] = {YoungItem::T3_1, YoungItem::T3_2, YoungItem::T3_3, YoungItem::T3_4,
                                            YoungItem::T4_1, YoungItem::T4_2, YoungItem::T4_3};
inline constexpr PolyaItem kPolyaItems[] = {PolyaItem::T5_1, PolyaItem::T5_2, PolyaItem::T5_3};

/// Pointwise products and powers used by the checks; breakpoints are merged.
Function product(const Function& f, const Function& g);
Function power(const Function& f, double exponent);
Function power_product(const Function& f, double a, const Function& g, double b);

/// Lambda * I(u^2) - (I u)^2 against (M Lambda - I u)(I u - m Lambda) - Lambda I((M-u)(u-m)).
CheckResult lemma1_residual(const Params& params, const BoundedFunctionSpec& u, double x,
                            const QuadOptions& opts = {});

/// |Lambda I(fg) - I f I g| <= Lambda^2 (M-m)(P-p), divided by 4 for the quarter variant.
/// Extra `cauchy_chain_bound` = (M Lambda - I f)(I f - m Lambda)(P Lambda - I g)(I g - p Lambda),
/// which bounds lhs^2.
CheckResult gruss_check(const Params& params, const BoundedFunctionSpec& f, const BoundedFunctionSpec& g, double x,
                        GrussVariant variant, const QuadOptions& opts = {});

/// Mean-value Gruss inequality on [a, b]; f and g are given on [0, b - a] and
/// read as t -> f(t - a). Extra `operator_lhs` is the same Chebyshev
/// functional from the fractional operator at alpha = rho = 1, eta = kappa = 0.
CheckResult classical_gruss_check(const BoundedFunctionSpec& f, const BoundedFunctionSpec& g, double a, double b,
                                  double tol = 1e-13, const QuadOptions& opts = {});

/// Two-order Cauchy-Schwarz bound.
CheckResult lemma2_check(const Params& params, double gamma, const Function& f, const Function& g, double x,
                         const QuadOptions& opts = {});

CheckResult lemma3_residual(const Params& params, double gamma, const BoundedFunctionSpec& u, double x,
                            const QuadOptions& opts = {});

CheckResult theorem2_check(const Params& params, double gamma, const BoundedFunctionSpec& f,
                           const BoundedFunctionSpec& g, double x, const QuadOptions& opts = {});

/// Young-type items. Extras hold the alternative forms:
/// 3.3 `corrected_lhs`/`corrected_rhs`/`corrected_margin`, 4.1 and 4.2 `proof_form_*`.
CheckResult young_suite_check(const Params& params, const Function& f, const Function& g,
                              const YoungExponents& exps, double x, YoungItem item, const QuadOptions& opts = {});

/// Reverse Cauchy-Schwarz items. 5.2 and 5.3 carry `lower_margin` for the
/// Cauchy-Schwarz side that must be non-negative.
CheckResult polya_szego_suite_check(const Params& params, const RatioBoundedPair& pair, double x, PolyaItem item,
                                    const QuadOptions& opts = {});

}  // namespace fracineq

#endif  // FRACINEQ_INEQUALITIES_HPP
