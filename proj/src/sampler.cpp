#include "fracineq/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace fracineq {

std::string_view to_string(FunctionFamily family) {
  switch (family) {
    case FunctionFamily::Polynomial: return "polynomial";
    case FunctionFamily::TrigSeries: return "trig_series";
    case FunctionFamily::PiecewiseLinear: return "piecewise_linear";
  }
  return "?";
}

FunctionFamily parse_family(std::string_view name) {
  for (auto f : {FunctionFamily::Polynomial, FunctionFamily::TrigSeries, FunctionFamily::PiecewiseLinear}) {
    if (to_string(f) == name) return f;
  }
  throw DomainError("unknown function family: " + std::string(name));
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Uniform on [-1, 1] from the top 53 bits; spelled out so streams do not
// depend on the standard library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return 2 * std::ldexp(static_cast<double>(rng_() >> 11), -53) - 1; }
  double unit() { return std::ldexp(static_cast<double>(rng_() >> 11), -53); }

 private:
  std::mt19937_64 rng_;
};

struct GridScan {
  double min = 0;
  double max = 0;
  double pad = 0;
};

template <typename Fn>
GridScan scan(Fn&& fn, double x, int n) {
  if (n < 2) throw DomainError("grid certification needs at least two points");
  GridScan s;
  double prev = fn(0.0);
  s.min = s.max = prev;
  for (int i = 1; i < n; ++i) {
    const double v = fn(x * i / (n - 1));
    if (!std::isfinite(v)) throw EvaluationError("sampled function is not finite", x * i / (n - 1));
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    s.pad = std::max(s.pad, std::abs(v - prev));
    prev = v;
  }
  return s;
}

Function polynomial(const std::vector<double>& coeffs, int degree) {
  return make_function<double>(
      [coeffs](double t) {
        double acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
        return acc;
      },
      "polynomial/" + std::to_string(degree));
}

}  // namespace

BoundedFunctionSpec certify_on_grid(Function f, double x, int grid_points) {
  if (!(x > 0)) throw DomainError("certify_on_grid: x must be positive");
  const GridScan s = scan([&](double t) { return f(t); }, x, grid_points);
  BoundedFunctionSpec spec;
  spec.f = std::move(f);
  spec.m = s.min - s.pad;
  spec.M = s.max + s.pad;
  spec.certification = {Certification::Kind::Grid, grid_points, s.pad};
  return spec;
}

SampledFunction function_family_sampler(std::uint64_t seed, FunctionFamily family, int degree, double x,
                                        const SamplerOptions& opts) {
  if (!(x > 0)) throw DomainError("function_family_sampler: x must be positive");
  degree = std::max(degree, 0);
  Uniform uni(mix_seed(seed, static_cast<std::uint64_t>(family)));
  SampledFunction out{{}, family, {}};
  Function f;

  switch (family) {
    case FunctionFamily::Polynomial: {
      out.coefficients.resize(static_cast<std::size_t>(degree) + 1);
      double scale = 1;
      for (auto& c : out.coefficients) {
        c = uni() / scale;
        scale *= x;
      }
      f = polynomial(out.coefficients, degree);
      break;
    }
    case FunctionFamily::TrigSeries: {
      const double c0 = uni();
      std::vector<double> a(static_cast<std::size_t>(degree)), b(static_cast<std::size_t>(degree));
      for (int k = 0; k < degree; ++k) {
        a[k] = uni();
        b[k] = uni();
      }
      const double w = std::numbers::pi / x;
      f = make_function<double>(
          [c0, a, b, w](double t) {
            double acc = c0;
            for (std::size_t k = 0; k < a.size(); ++k) {
              const double arg = static_cast<double>(k + 1) * w * t;
              acc += (a[k] * std::sin(arg) + b[k] * std::cos(arg)) / static_cast<double>(k + 1);
            }
            return acc;
          },
          "trig_series/" + std::to_string(degree));
      break;
    }
    case FunctionFamily::PiecewiseLinear: {
      const int pieces = std::max(degree, 1);
      std::vector<double> knots{0.0};
      for (int k = 1; k < pieces; ++k) knots.push_back(x * uni.unit());
      knots.push_back(x);
      std::sort(knots.begin(), knots.end());
      std::vector<double> values(knots.size());
      for (auto& v : values) v = uni();
      f = make_function<double>(
          [knots, values](double t) {
            if (t <= knots.front()) return values.front();
            if (t >= knots.back()) return values.back();
            const auto it = std::upper_bound(knots.begin(), knots.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
            const double width = knots[i + 1] - knots[i];
            if (!(width > 0)) return values[i + 1];
            const double s = (t - knots[i]) / width;
            return values[i] + s * (values[i + 1] - values[i]);
          },
          "piecewise_linear/" + std::to_string(pieces));
      f.breakpoints.assign(knots.begin() + 1, knots.end() - 1);
      break;
    }
  }

  out.spec = certify_on_grid(f, x, opts.grid_points);
  if (opts.positivity_floor && out.spec.m < *opts.positivity_floor) {
    const double lift = *opts.positivity_floor - out.spec.m;
    if (family == FunctionFamily::Polynomial) {
      out.coefficients[0] += lift;
      out.spec.f = polynomial(out.coefficients, degree);
    } else {
      Function lifted = make_function<double>([inner = f, lift](double t) { return inner(t) + lift; }, f.label);
      lifted.breakpoints = f.breakpoints;
      out.spec.f = std::move(lifted);
    }
    out.spec.m += lift;
    out.spec.M += lift;
  }
  return out;
}

RatioBoundedPair certify_ratio(Function f, Function g, double x, int grid_points) {
  if (!(x > 0)) throw DomainError("certify_ratio: x must be positive");
  const GridScan r = scan([&](double t) { return f(t) / g(t); }, x, grid_points);
  const GridScan gs = scan([&](double t) { return g(t); }, x, grid_points);
  if (!(gs.min > 0) || !(r.min > 0)) throw PreconditionError("certify_ratio: f and g must be positive on [0, x]");
  RatioBoundedPair pair;
  pair.f = std::move(f);
  pair.g = std::move(g);
  pair.m_ratio = std::max(r.min - r.pad, r.min / 2);
  pair.M_ratio = r.max + r.pad;
  pair.g_floor = std::max(gs.min - gs.pad, gs.min / 2);
  return pair;
}

RatioBoundedPair ratio_pair_sampler(std::uint64_t seed, FunctionFamily family, int degree, double x, double g_floor,
                                    int grid_points) {
  SamplerOptions fo{grid_points, 0.1};
  SamplerOptions go{grid_points, g_floor};
  auto f = function_family_sampler(mix_seed(seed, 1), family, degree, x, fo);
  auto g = function_family_sampler(mix_seed(seed, 2), family, degree, x, go);
  return certify_ratio(f.spec.f, g.spec.f, x, grid_points);
}

}  // namespace fracineq
