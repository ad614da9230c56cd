#include <doctest.h>

#include <cmath>

#include "fracineq/sampler.hpp"

using namespace fracineq;

TEST_CASE("degree 0 polynomial is a constant with exact bounds") {
  const auto s = function_family_sampler(0, FunctionFamily::Polynomial, 0, 1.0);
  const double c = s.spec.f(0.0);
  CHECK(s.spec.f(0.37) == c);
  CHECK(s.spec.f(1.0) == c);
  CHECK(s.spec.m == c);
  CHECK(s.spec.M == c);
  REQUIRE(s.coefficients.size() == 1);
  CHECK(s.coefficients[0] == c);
}

TEST_CASE("sampling is deterministic in the seed") {
  for (auto family : {FunctionFamily::Polynomial, FunctionFamily::TrigSeries, FunctionFamily::PiecewiseLinear}) {
    const auto a = function_family_sampler(42, family, 3, 1.7);
    const auto b = function_family_sampler(42, family, 3, 1.7);
    const auto other = function_family_sampler(43, family, 3, 1.7);
    CHECK(a.spec.m == b.spec.m);
    CHECK(a.spec.M == b.spec.M);
    CHECK(a.spec.f.breakpoints == b.spec.f.breakpoints);
    bool differs = false;
    for (int i = 0; i <= 100; ++i) {
      const double t = 1.7 * i / 100;
      CHECK(a.spec.f(t) == b.spec.f(t));
      differs = differs || a.spec.f(t) != other.spec.f(t);
    }
    CHECK(differs);
  }
}

TEST_CASE("grid certification survives a 10x finer grid") {
  const std::pair<std::uint64_t, FunctionFamily> cases[] = {{7, FunctionFamily::TrigSeries},
                                                            {3, FunctionFamily::Polynomial},
                                                            {11, FunctionFamily::PiecewiseLinear}};
  for (const auto& [seed, family] : cases) {
    const auto s = function_family_sampler(seed, family, 3, 1.0);
    CHECK(s.spec.certification.kind == Certification::Kind::Grid);
    CHECK(s.spec.certification.grid_size == 4097);
    const int fine = 10 * (4097 - 1) + 1;
    for (int i = 0; i < fine; ++i) {
      const double v = s.spec.f(static_cast<double>(i) / (fine - 1));
      REQUIRE(v >= s.spec.m);
      REQUIRE(v <= s.spec.M);
    }
  }
}

TEST_CASE("polynomial coefficients reproduce the function") {
  const auto s = function_family_sampler(5, FunctionFamily::Polynomial, 4, 2.5);
  REQUIRE(s.coefficients.size() == 5);
  for (double t : {0.0, 0.3, 1.1, 2.5}) {
    double v = 0;
    for (std::size_t k = s.coefficients.size(); k-- > 0;) v = v * t + s.coefficients[k];
    CHECK(v == doctest::Approx(s.spec.f(t)).epsilon(1e-13));
  }
}

TEST_CASE("positivity floor lifts every family") {
  SamplerOptions opts;
  opts.positivity_floor = 0.1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto family : {FunctionFamily::Polynomial, FunctionFamily::TrigSeries, FunctionFamily::PiecewiseLinear}) {
      const auto s = function_family_sampler(seed, family, 3, 1.0, opts);
      CHECK(s.spec.m >= 0.1 - 1e-15);
      for (int i = 0; i <= 200; ++i) CHECK(s.spec.f(i / 200.0) >= s.spec.m);
    }
  }
}

TEST_CASE("ratio pairs are certified") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pair = ratio_pair_sampler(seed, FunctionFamily::TrigSeries, 3, 2.0);
    CHECK(pair.m_ratio > 0);
    CHECK(pair.m_ratio <= pair.M_ratio);
    for (int i = 0; i <= 400; ++i) {
      const double t = 2.0 * i / 400;
      CHECK(pair.g(t) >= pair.g_floor);
      const double ratio = pair.f(t) / pair.g(t);
      CHECK(ratio >= pair.m_ratio);
      CHECK(ratio <= pair.M_ratio);
    }
  }
}

TEST_CASE("family names and seed mixing") {
  CHECK(parse_family("trig_series") == FunctionFamily::TrigSeries);
  CHECK(to_string(FunctionFamily::PiecewiseLinear) == "piecewise_linear");
  CHECK_THROWS_AS(parse_family("spline"), DomainError);
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  CHECK(mix_seed(0, 0) != 0);
}
