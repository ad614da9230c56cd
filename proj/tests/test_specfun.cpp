#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "fracineq/specfun.hpp"

using namespace fracineq;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Composite midpoint rule: slow but independent of anything in the library.
double midpoint(auto f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += f(lo + (i + 0.5) * h);
  return sum * h;
}

}  // namespace

TEST_CASE("log_gamma matches trivial values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-16);
  CHECK(rel_err(log_gamma(5.0), std::log(24.0)) < 1e-14);
  CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-14);
}

TEST_CASE("log_gamma against high-precision reference values") {
  // Reference values computed with 30-digit arithmetic.
  const std::vector<std::pair<double, double>> table = {
      {0.001, 6.9071788853838536825},   {0.5, 0.57236494292470008707},    {0.9, 0.066376239734742971189},
      {1.1, -0.049872441259839724148},  {1.5, -0.12078223763524522235},   {1.9, -0.038984275923083330039},
      {2.05, 0.021937091667171834985},  {3.3, 0.98709857789473458788},    {10.7, 14.403210596298517766},
      {123.4, 469.33609744219055844},   {999, 5898.3136684305326583}};
  for (auto [z, want] : table) {
    CAPTURE(z);
    CHECK(rel_err(log_gamma(z), want) < 1e-13);
  }
}

TEST_CASE("log_gamma tracks std::lgamma on [1e-3, 1e3]") {
  double worst = 0;
  for (int i = 0; i <= 6000; ++i) {
    const double z = std::pow(10.0, -3.0 + 6.0 * i / 6000.0);
    const double want = std::lgamma(z);
    if (std::abs(want) < 1e-3) continue;  // libm relative accuracy degrades at the roots
    worst = std::max(worst, rel_err(log_gamma(z), want));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("log_gamma recurrence") {
  for (int i = 1; i <= 100; ++i) {
    const double z = 0.1 * i;
    CAPTURE(z);
    CHECK(std::abs(log_gamma(z + 1) - log_gamma(z) - std::log(z)) < 1e-12);
  }
}

TEST_CASE("log_gamma rejects non-positive and non-finite input") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(log_gamma(INFINITY), DomainError);
}

TEST_CASE("beta values") {
  CHECK(rel_err(beta(1.0, 1.0), 1.0) < 1e-15);
  CHECK(rel_err(beta(1.0, 2.0), 0.5) < 1e-15);
  const double brute = midpoint([](double u) { return u * (1 - u) * (1 - u); }, 0, 1, 200000);
  CHECK(rel_err(brute, 1.0 / 12.0) < 1e-9);
  CHECK(rel_err(beta(2.0, 3.0), brute) < 1e-9);
  CHECK(rel_err(beta(2.0, 3.0), 1.0 / 12.0) < 1e-14);
  CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(beta(1.0, -2.0), DomainError);
}

TEST_CASE("beta is symmetric as computed") {
  for (double a : {0.3, 1.7, 4.2, 11.0}) {
    for (double b : {0.5, 2.5, 9.9}) {
      CHECK(rel_err(beta(a, b), beta(b, a)) <= 1e-14);
    }
  }
}

TEST_CASE("beta agrees with midpoint quadrature for smooth exponents") {
  // Exponents with a - 1, b - 1 integral or >= 1 keep the midpoint rule at O(h^2).
  for (double a : {1.0, 2.0, 2.75, 4.0}) {
    for (double b : {1.0, 2.25, 4.0}) {
      const double brute =
          midpoint([&](double u) { return std::pow(u, a - 1) * std::pow(1 - u, b - 1); }, 0, 1, 400000);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(rel_err(beta(a, b), brute) < 1e-9);
    }
  }
}

TEST_CASE("long double instantiation") {
  CHECK(std::abs(log_gamma(5.0L) - std::log(24.0L)) < 1e-14L);
}
