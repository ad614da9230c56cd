#include "fracineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fracineq {

YoungExponents YoungExponents::from_p(double p) {
  YoungExponents e{p, p / (p - 1)};
  e.validate();
  return e;
}

void YoungExponents::validate() const {
  if (!(p > 1) || !(q > 1) || std::abs(1 / p + 1 / q - 1) > 1e-12) {
    throw PreconditionError("Young exponents must satisfy p, q > 1 and 1/p + 1/q = 1");
  }
}

std::optional<double> CheckResult::extra(std::string_view name) const {
  for (const auto& e : extras) {
    if (e.name == name) return e.value;
  }
  return std::nullopt;
}

std::string_view to_string(GrussVariant v) { return v == GrussVariant::AsPrinted ? "as_printed" : "quarter"; }

std::string_view to_string(YoungItem item) {
  switch (item) {
    case YoungItem::T3_1: return "3.1";
    case YoungItem::T3_2: return "3.2";
    case YoungItem::T3_3: return "3.3";
    case YoungItem::T3_4: return "3.4";
    case YoungItem::T4_1: return "4.1";
    case YoungItem::T4_2: return "4.2";
    case YoungItem::T4_3: return "4.3";
  }
  return "?";
}

std::string_view to_string(PolyaItem item) {
  switch (item) {
    case PolyaItem::T5_1: return "5.1";
    case PolyaItem::T5_2: return "5.2";
    case PolyaItem::T5_3: return "5.3";
  }
  return "?";
}

namespace {

std::vector<double> merged_breakpoints(const Function& f, const Function& g) {
  std::vector<double> out = f.breakpoints;
  out.insert(out.end(), g.breakpoints.begin(), g.breakpoints.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Function shifted(const Function& f, double by) {
  Function out = make_function<double>([f, by](double t) { return f(t - by); }, f.label + "(t-" + std::to_string(by) + ")");
  for (double b : f.breakpoints) out.breakpoints.push_back(b + by);
  return out;
}

// (M - u)(u - m)
Function bound_gap(const BoundedFunctionSpec& u) {
  const double m = u.m;
  const double M = u.M;
  Function out = make_function<double>([f = u.f, m, M](double t) {
    const double v = f(t);
    return (M - v) * (v - m);
  }, "(M-u)(u-m)");
  out.breakpoints = u.f.breakpoints;
  return out;
}

void require_inequality_params(const Params& params) {
  params.validate_for_inequalities();
  if (params.lower != 0) throw PreconditionError("inequality checks use lower terminal 0");
}

void require_bounds(const BoundedFunctionSpec& s) {
  if (!(s.m <= s.M) || !std::isfinite(s.m) || !std::isfinite(s.M)) {
    throw PreconditionError("bounded function needs finite m <= M");
  }
}

void require_order(double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) throw PreconditionError("second order gamma must be positive");
}

// Wraps f so that a non-positive sample inside the quadrature fails loudly,
// after a coarse scan of (0, x].
Function checked_positive(const Function& f, double x) {
  constexpr int kScan = 257;
  for (int i = 1; i <= kScan; ++i) {
    const double t = x * i / kScan;
    if (!(f(t) > 0)) throw PreconditionError("function '" + f.label + "' is not positive on (0, x]");
  }
  Function out = f;
  out.evaluator = [inner = f.evaluator, label = f.label](double t) {
    const double v = inner(t);
    if (!(v > 0)) throw PreconditionError("function '" + label + "' is not positive at a quadrature node");
    return v;
  };
  return out;
}

CheckResult base_result(std::string suite, std::string variant, const Params& params, double x) {
  CheckResult r;
  r.suite = std::move(suite);
  r.variant = std::move(variant);
  r.params = params;
  r.x = x;
  return r;
}

void set_identity(CheckResult& r, double lhs, double rhs, double scale) {
  r.kind = CheckKind::Identity;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = lhs - rhs;
  r.margin = -std::abs(r.residual);
  r.scale = scale;
}

// `upper` is the side claimed to be larger.
void set_inequality(CheckResult& r, double lhs, double rhs, double upper, double lower, double scale) {
  r.kind = CheckKind::Inequality;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = upper - lower;
  r.residual = 0;
  r.scale = scale;
}

// Moments shared by the two-order suites.
struct TwoOrder {
  double lam_a, lam_g;
  Params pa, pg;
};

TwoOrder two_order(const Params& params, double gamma, double x) {
  TwoOrder t{0, 0, params, params.with_alpha(gamma)};
  t.lam_a = lambda_factor(t.pa, x);
  t.lam_g = lambda_factor(t.pg, x);
  return t;
}

// Lambda_a I_g(fg) + Lambda_g I_a(fg) - I_a f I_g g - I_g f I_a g
double two_order_chebyshev(const TwoOrder& t, const Function& f, const Function& g, double x,
                           const QuadOptions& opts) {
  const Function fg = product(f, g);
  return t.lam_a * left_integral(t.pg, fg, x, opts) + t.lam_g * left_integral(t.pa, fg, x, opts) -
         left_integral(t.pa, f, x, opts) * left_integral(t.pg, g, x, opts) -
         left_integral(t.pg, f, x, opts) * left_integral(t.pa, g, x, opts);
}

// (M Lambda_a - I_a u)(I_g u - m Lambda_g) + (I_a u - m Lambda_a)(M Lambda_g - I_g u)
double two_order_bracket(const TwoOrder& t, double ia, double ig, double m, double M) {
  return (M * t.lam_a - ia) * (ig - m * t.lam_g) + (ia - m * t.lam_a) * (M * t.lam_g - ig);
}

}  // namespace

Function product(const Function& f, const Function& g) {
  Function out = make_function<double>([f, g](double t) { return f(t) * g(t); }, f.label + "*" + g.label);
  out.breakpoints = merged_breakpoints(f, g);
  return out;
}

Function power(const Function& f, double exponent) {
  Function out = make_function<double>([f, exponent](double t) { return std::pow(f(t), exponent); },
                                       f.label + "^" + std::to_string(exponent));
  out.breakpoints = f.breakpoints;
  return out;
}

Function power_product(const Function& f, double a, const Function& g, double b) {
  Function out = make_function<double>([f, a, g, b](double t) { return std::pow(f(t), a) * std::pow(g(t), b); },
                                       "f^a g^b");
  out.breakpoints = merged_breakpoints(f, g);
  return out;
}

CheckResult lemma1_residual(const Params& params, const BoundedFunctionSpec& u, double x, const QuadOptions& opts) {
  require_inequality_params(params);
  require_bounds(u);
  const double lam = lambda_factor(params, x);
  const double iu = left_integral(params, u.f, x, opts);
  const double iu2 = left_integral(params, product(u.f, u.f), x, opts);
  const double igap = left_integral(params, bound_gap(u), x, opts);

  const double lhs = lam * iu2 - iu * iu;
  const double rhs = (u.M * lam - iu) * (iu - u.m * lam) - lam * igap;
  CheckResult r = base_result("lemma1", "identity", params, x);
  set_identity(r, lhs, rhs, std::abs(lam * iu2) + iu * iu);
  r.lambda_alpha = lam;
  return r;
}

CheckResult gruss_check(const Params& params, const BoundedFunctionSpec& f, const BoundedFunctionSpec& g, double x,
                        GrussVariant variant, const QuadOptions& opts) {
  require_inequality_params(params);
  require_bounds(f);
  require_bounds(g);
  const double lam = lambda_factor(params, x);
  const double i_f = left_integral(params, f.f, x, opts);
  const double i_g = left_integral(params, g.f, x, opts);
  const double i_fg = left_integral(params, product(f.f, g.f), x, opts);

  const double lhs = std::abs(lam * i_fg - i_f * i_g);
  double rhs = lam * lam * (f.M - f.m) * (g.M - g.m);
  if (variant == GrussVariant::Quarter) rhs /= 4;
  CheckResult r = base_result("theorem1", std::string(to_string(variant)), params, x);
  set_inequality(r, lhs, rhs, rhs, lhs, std::abs(rhs));
  r.lambda_alpha = lam;
  const double chain = (f.M * lam - i_f) * (i_f - f.m * lam) * (g.M * lam - i_g) * (i_g - g.m * lam);
  r.extras.push_back({"chebyshev", lam * i_fg - i_f * i_g});
  r.extras.push_back({"cauchy_chain_bound", chain});
  return r;
}

CheckResult classical_gruss_check(const BoundedFunctionSpec& f, const BoundedFunctionSpec& g, double a, double b,
                                  double tol, const QuadOptions& opts) {
  if (!(a < b)) throw PreconditionError("classical_gruss_check: need a < b");
  require_bounds(f);
  require_bounds(g);
  const double len = b - a;
  const Function fs = shifted(f.f, a);
  const Function gs = shifted(g.f, a);
  // Absolute tolerance from the bounds, so a mean that vanishes does not
  // chase relative accuracy forever.
  const double f_max = std::max(std::abs(f.m), std::abs(f.M));
  const double g_max = std::max(std::abs(g.m), std::abs(g.M));
  auto mean = [&](const Function& h, double h_max) {
    // Breakpoints split the adaptive integration so kinks stay at panel ends.
    std::vector<double> cuts{a};
    for (double t : h.breakpoints) {
      if (t > a && t < b) cuts.push_back(t);
    }
    cuts.push_back(b);
    double sum = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double abs_tol = std::max(tol * h_max * (cuts[k + 1] - cuts[k]), 1e-300);
      sum += reference_integrate([&](double t) { return h(t); }, cuts[k], cuts[k + 1], tol, abs_tol);
    }
    return sum / len;
  };
  const double mf = mean(fs, f_max);
  const double mg = mean(gs, g_max);
  const double mfg = mean(product(fs, gs), f_max * g_max);
  const double lhs = std::abs(mfg - mf * mg);
  const double rhs = (f.M - f.m) * (g.M - g.m) / 4;

  // The operator at alpha = rho = 1, eta = kappa = 0 is plain integration from
  // 0; on [0, b - a] its Chebyshev functional is (b - a)^2 times the one above.
  const Params plain{};
  const double lam = lambda_factor(plain, len);
  const double op = std::abs(lam * left_integral(plain, product(f.f, g.f), len, opts) -
                             left_integral(plain, f.f, len, opts) * left_integral(plain, g.f, len, opts)) /
                    (lam * lam);

  CheckResult r = base_result("classical", "mean_value", plain, b);
  set_inequality(r, lhs, rhs, rhs, lhs, std::abs(rhs));
  r.lambda_alpha = lam;
  r.extras.push_back({"a", a});
  r.extras.push_back({"operator_lhs", op});
  r.extras.push_back({"recovery_difference", op - lhs});
  return r;
}

CheckResult lemma2_check(const Params& params, double gamma, const Function& f, const Function& g, double x,
                         const QuadOptions& opts) {
  require_inequality_params(params);
  require_order(gamma);
  const TwoOrder t = two_order(params, gamma, x);
  const double cheb = two_order_chebyshev(t, f, g, x, opts);
  auto self_term = [&](const Function& h) {
    const Function h2 = product(h, h);
    return t.lam_a * left_integral(t.pg, h2, x, opts) + t.lam_g * left_integral(t.pa, h2, x, opts) -
           2 * left_integral(t.pa, h, x, opts) * left_integral(t.pg, h, x, opts);
  };
  const double lhs = cheb * cheb;
  const double rhs = self_term(f) * self_term(g);
  CheckResult r = base_result("lemma2", "cauchy_schwarz", params, x);
  set_inequality(r, lhs, rhs, rhs, lhs, std::abs(rhs));
  r.lambda_alpha = t.lam_a;
  r.lambda_gamma = t.lam_g;
  r.gamma = gamma;
  return r;
}

CheckResult lemma3_residual(const Params& params, double gamma, const BoundedFunctionSpec& u, double x,
                            const QuadOptions& opts) {
  require_inequality_params(params);
  require_order(gamma);
  require_bounds(u);
  const TwoOrder t = two_order(params, gamma, x);
  const Function u2 = product(u.f, u.f);
  const Function gap = bound_gap(u);
  const double ia = left_integral(t.pa, u.f, x, opts);
  const double ig = left_integral(t.pg, u.f, x, opts);
  const double ia2 = left_integral(t.pa, u2, x, opts);
  const double ig2 = left_integral(t.pg, u2, x, opts);
  const double lhs = t.lam_a * ig2 + t.lam_g * ia2 - 2 * ia * ig;
  const double rhs = (u.M * t.lam_a - ia) * (ig - u.m * t.lam_g) + (u.M * t.lam_g - ig) * (ia - u.m * t.lam_a) -
                     t.lam_a * left_integral(t.pg, gap, x, opts) - t.lam_g * left_integral(t.pa, gap, x, opts);
  CheckResult r = base_result("lemma3", "identity", params, x);
  set_identity(r, lhs, rhs, std::abs(t.lam_a * ig2) + std::abs(t.lam_g * ia2) + 2 * std::abs(ia * ig));
  r.lambda_alpha = t.lam_a;
  r.lambda_gamma = t.lam_g;
  r.gamma = gamma;
  return r;
}

CheckResult theorem2_check(const Params& params, double gamma, const BoundedFunctionSpec& f,
                           const BoundedFunctionSpec& g, double x, const QuadOptions& opts) {
  require_inequality_params(params);
  require_order(gamma);
  require_bounds(f);
  require_bounds(g);
  const TwoOrder t = two_order(params, gamma, x);
  const double cheb = two_order_chebyshev(t, f.f, g.f, x, opts);
  const double f_bracket =
      two_order_bracket(t, left_integral(t.pa, f.f, x, opts), left_integral(t.pg, f.f, x, opts), f.m, f.M);
  const double g_bracket =
      two_order_bracket(t, left_integral(t.pa, g.f, x, opts), left_integral(t.pg, g.f, x, opts), g.m, g.M);
  const double lhs = cheb * cheb;
  const double rhs = f_bracket * g_bracket;
  CheckResult r = base_result("theorem2", "bounded", params, x);
  set_inequality(r, lhs, rhs, rhs, lhs, std::abs(rhs));
  r.lambda_alpha = t.lam_a;
  r.lambda_gamma = t.lam_g;
  r.gamma = gamma;
  return r;
}

CheckResult young_suite_check(const Params& params, const Function& f_in, const Function& g_in,
                              const YoungExponents& exps, double x, YoungItem item, const QuadOptions& opts) {
  require_inequality_params(params);
  exps.validate();
  const Function f = checked_positive(f_in, x);
  const Function g = checked_positive(g_in, x);
  const double p = exps.p;
  const double q = exps.q;
  const double lam = lambda_factor(params, x);
  auto I = [&](const Function& h) { return left_integral(params, h, x, opts); };
  auto Ipow = [&](const Function& h, double e) { return I(power(h, e)); };
  auto Ipp = [&](double a, double b) { return I(power_product(f, a, g, b)); };

  double lhs = 0;
  double rhs = 0;
  CheckResult r = base_result(item <= YoungItem::T3_4 ? "young3" : "young4", std::string(to_string(item)), params, x);
  switch (item) {
    case YoungItem::T3_1:
      lhs = Ipow(f, p) / p + Ipow(g, q) / q;
      rhs = I(f) * I(g) / lam;
      break;
    case YoungItem::T3_2: {
      const double ifg = I(product(f, g));
      lhs = Ipow(f, p) * Ipow(g, p) / p + Ipow(f, q) * Ipow(g, q) / q;
      rhs = ifg * ifg;
      break;
    }
    case YoungItem::T3_3: {
      lhs = Ipow(f, p) * Ipow(g, q) / p + Ipow(f, q) * Ipow(g, p) / q;
      rhs = Ipp(p - 1, p - 1) * Ipp(q - 1, q - 1);
      // Young applied to f(t) g(s)^{q-1} and f(s) g(t)^{p-1} bounds the same
      // left side by I(f g^{p-1}) I(f g^{q-1}).
      const double corrected = Ipp(1, p - 1) * Ipp(1, q - 1);
      r.extras.push_back({"corrected_rhs", corrected});
      r.extras.push_back({"corrected_margin", lhs - corrected});
      break;
    }
    case YoungItem::T3_4:
      lhs = Ipow(f, p) * Ipow(g, q);
      rhs = I(product(f, g)) * Ipp(p - 1, q - 1);
      break;
    case YoungItem::T4_1: {
      const double ifg = I(product(f, g));
      lhs = Ipow(f, p) * Ipow(g, 2) / p + Ipow(f, 2) * Ipow(g, q) / q;
      rhs = ifg * Ipp(2 / q, 2 / p);
      const double proof_rhs = ifg * Ipp(2 / p, 2 / q);
      r.extras.push_back({"proof_form_rhs", proof_rhs});
      r.extras.push_back({"proof_form_margin", lhs - proof_rhs});
      break;
    }
    case YoungItem::T4_2: {
      const double tail = Ipp(p - 1, q - 1);
      lhs = Ipow(f, 2) * Ipow(g, q) / p + Ipow(f, q) * Ipow(g, 2) / q;
      rhs = Ipp(2 / q, 2 / p) * tail;
      const double proof_lhs = Ipow(f, 2) * Ipow(g, q) / p + Ipow(f, p) * Ipow(g, 2) / q;
      const double proof_rhs = Ipp(2 / p, 2 / q) * tail;
      r.extras.push_back({"proof_form_lhs", proof_lhs});
      r.extras.push_back({"proof_form_rhs", proof_rhs});
      r.extras.push_back({"proof_form_margin", proof_lhs - proof_rhs});
      break;
    }
    case YoungItem::T4_3: {
      Function mix = make_function<double>(
          [g, p, q](double t) {
            const double v = g(t);
            return std::pow(v, p) / p + std::pow(v, q) / q;
          },
          "g^p/p+g^q/q");
      mix.breakpoints = g.breakpoints;
      lhs = Ipow(f, 2) * I(mix);
      rhs = Ipp(2 / p, 1) * Ipp(2 / q, 1);
      break;
    }
  }
  set_inequality(r, lhs, rhs, lhs, rhs, std::abs(lhs) + std::abs(rhs));
  r.lambda_alpha = lam;
  r.extras.push_back({"p", p});
  return r;
}

CheckResult polya_szego_suite_check(const Params& params, const RatioBoundedPair& pair, double x, PolyaItem item,
                                    const QuadOptions& opts) {
  require_inequality_params(params);
  const double m = pair.m_ratio;
  const double M = pair.M_ratio;
  if (!(m > 0) || !(m <= M) || !std::isfinite(M)) throw PreconditionError("ratio bounds need 0 < m <= M");
  const double lam = lambda_factor(params, x);
  const double iff = left_integral(params, product(pair.f, pair.f), x, opts);
  const double igg = left_integral(params, product(pair.g, pair.g), x, opts);
  const double ifg = left_integral(params, product(pair.f, pair.g), x, opts);

  CheckResult r = base_result("polya5", std::string(to_string(item)), params, x);
  switch (item) {
    case PolyaItem::T5_1: {
      const double lhs = iff * igg;
      const double rhs = (M + m) * (M + m) / (4 * M * m) * ifg * ifg;
      set_inequality(r, lhs, rhs, rhs, lhs, std::abs(lhs) + std::abs(rhs));
      break;
    }
    case PolyaItem::T5_2: {
      const double root = std::sqrt(iff * igg);
      const double diff = std::sqrt(M) - std::sqrt(m);
      const double lhs = root - ifg;
      const double rhs = diff * diff / (2 * std::sqrt(M * m)) * ifg;
      // Terms cancel to zero when f is proportional to g, so the scale is
      // built from their magnitudes rather than from lhs.
      set_inequality(r, lhs, rhs, rhs, lhs, root + std::abs(ifg) + std::abs(rhs));
      r.extras.push_back({"lower_margin", lhs});
      break;
    }
    case PolyaItem::T5_3: {
      const double lhs = iff * igg - ifg * ifg;
      const double rhs = (M - m) * (M - m) / (4 * M * m) * ifg * ifg;
      set_inequality(r, lhs, rhs, rhs, lhs, std::abs(iff * igg) + ifg * ifg + std::abs(rhs));
      r.extras.push_back({"lower_margin", lhs});
      break;
    }
  }
  r.lambda_alpha = lam;
  r.extras.push_back({"m_ratio", m});
  r.extras.push_back({"M_ratio", M});
  return r;
}

}  // namespace fracineq
