#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "fracineq/quadrature.hpp"

using namespace fracineq;

namespace {
double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("one- and two-point Gauss-Legendre rules on (0,1)") {
  const auto one = gauss_jacobi_rule(1, 0.0, 0.0);
  REQUIRE(one.order() == 1);
  CHECK(std::abs(one.nodes(0) - 0.5) < 1e-15);
  CHECK(std::abs(one.weights(0) - 1.0) < 1e-15);

  const auto two = gauss_jacobi_rule(2, 0.0, 0.0);
  const double offset = 1 / (2 * std::sqrt(3.0));
  CHECK(std::abs(two.nodes(0) - (0.5 - offset)) < 1e-15);
  CHECK(std::abs(two.nodes(1) - (0.5 + offset)) < 1e-15);
  CHECK(std::abs(two.weights(0) - 0.5) < 1e-15);
  CHECK(std::abs(two.weights(1) - 0.5) < 1e-15);
  for (int k = 0; k <= 3; ++k) {
    const double approx = integrate_weighted(two, [k](double u) { return std::pow(u, k); });
    CHECK(rel_err(approx, 1.0 / (k + 1)) < 1e-14);
  }
}

TEST_CASE("Jacobi rule total mass") {
  const auto rule = gauss_jacobi_rule(4, -0.5, 1.5);
  CHECK(rel_err(rule.weights.sum(), 1.1780972450961724644) < 1e-13);
}

TEST_CASE("rule invariants and monomial exactness sweep") {
  for (int n : {2, 4, 8, 16}) {
    for (double p : {-0.5, 0.0, 1.3}) {
      for (double q : {0.0, 0.7, 2.0}) {
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(q);
        const auto rule = gauss_jacobi_rule(n, p, q);
        REQUIRE(rule.order() == n);
        for (int i = 0; i < n; ++i) {
          CHECK(rule.nodes(i) > 0);
          CHECK(rule.nodes(i) < 1);
          CHECK(rule.weights(i) > 0);
          if (i > 0) CHECK(rule.nodes(i) > rule.nodes(i - 1));
        }
        CHECK(rel_err(rule.weights.sum(), beta(q + 1, p + 1)) < 1e-12);
        for (int k = 0; k <= 2 * n - 1; ++k) {
          const double approx = integrate_weighted(rule, [k](double u) { return std::pow(u, k); });
          CHECK(rel_err(approx, beta(q + 1 + k, p + 1)) < 1e-11);
        }
      }
    }
  }
}

TEST_CASE("in-repo QL agrees with Eigen's tridiagonal solver") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int n : {1, 2, 5, 17, 64}) {
    VectorX<double> diag(n), off(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = uni(rng);
    for (int i = 0; i + 1 < n; ++i) off(i) = uni(rng);
    const auto ours = tridiagonal_eigen<double>(diag, off);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reference;
    Eigen::VectorXd d = diag, e = off;
    reference.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(ours.eigenvalues(i) - reference.eigenvalues()(i)) < 1e-13);
      CHECK(std::abs(std::abs(ours.first_components(i)) - std::abs(reference.eigenvectors()(0, i))) < 1e-11);
    }
  }
}

TEST_CASE("gauss_jacobi_rule rejects bad arguments") {
  CHECK_THROWS_AS(gauss_jacobi_rule(0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi_rule(4, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi_rule(4, 0.0, -1.2), DomainError);
}

TEST_CASE("integrate_weighted examples") {
  CHECK(std::abs(integrate_weighted(gauss_jacobi_rule(1, 0.0, 0.0), [](double) { return 1.0; }) - 1) < 1e-15);
  const auto r8 = gauss_jacobi_rule(8, 0.0, 0.0);
  CHECK(rel_err(integrate_weighted(r8, [](double u) { return std::pow(u, 5); }), 1.0 / 6) < 1e-14);
  const auto singular = gauss_jacobi_rule(8, -0.5, 0.0);
  CHECK(rel_err(integrate_weighted(singular, [](double) { return 1.0; }), 2.0) < 1e-14);
}

TEST_CASE("integrate_weighted reports the offending node") {
  const auto rule = gauss_jacobi_rule(3, 0.0, 0.0);
  try {
    integrate_weighted(rule, [](double u) { return u > 0.6 ? std::nan("") : 1.0; });
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.node() == doctest::Approx(rule.nodes(2)));
  }
}

TEST_CASE("reference_integrate examples") {
  CHECK(rel_err(reference_integrate([](double t) { return t; }, 0.0, 1.0, 1e-10), 0.5) < 1e-10);
  CHECK(rel_err(reference_integrate([](double t) { return 1 / std::sqrt(1 - t); }, 0.0, 1.0, 1e-8), 2.0) < 1e-8);
  const double b = reference_integrate([](double t) { return std::sqrt(t) / std::sqrt(1 - t); }, 0.0, 1.0, 1e-8);
  CHECK(rel_err(b, 1.5707963267948966192) < 1e-8);
}

TEST_CASE("reference_integrate agrees with Beta for exponents in [0.5, 4]") {
  for (double a : {0.5, 0.8, 1.0, 2.3, 4.0}) {
    for (double b : {0.5, 1.0, 1.7, 4.0}) {
      const double got = reference_integrate(
          [&](double u) { return std::pow(u, a - 1) * std::pow(1 - u, b - 1); }, 0.0, 1.0, 1e-10);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(rel_err(got, beta(a, b)) < 1e-10);
    }
  }
}

TEST_CASE("reference_integrate budget exhaustion") {
  try {
    reference_integrate([](double t) { return 1 / std::pow(1 - t, 0.9); }, 0.0, 1.0, 1e-14, 0.0, 5);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.error_estimate() > 0);
    CHECK(std::isfinite(e.estimate()));
  }
  CHECK_THROWS_AS(reference_integrate([](double t) { return t; }, 1.0, 1.0, 1e-8), DomainError);
}

TEST_CASE("Gauss-Jacobi and adaptive reference agree on random smooth integrands") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(0, 1);
  const double tol = 1e-11;
  for (int trial = 0; trial < 50; ++trial) {
    const double p = -0.5 + 2 * uni(rng);
    const double q = 2 * uni(rng);
    const double c0 = uni(rng), c1 = 2 * uni(rng) - 1, c2 = 3 * uni(rng), c3 = uni(rng);
    auto g = [&](double u) { return c0 + c1 * u + c2 * std::sin(3 * u) + c3 * std::exp(u); };
    const auto rule = gauss_jacobi_rule(24, p, q);
    const double gj = integrate_weighted(rule, g);
    // Integrated in s = 1 - u so the (1-u)^p singularity sits at 0, where
    // doubles resolve it; near 1 the last ulp alone carries ~1e-8 of the mass.
    const double ref = reference_integrate(
        [&](double s) { return std::pow(1 - s, q) * std::pow(s, p) * g(1 - s); }, 0.0, 1.0, tol);
    CAPTURE(trial);
    CHECK(std::abs(gj - ref) <= std::max(1e-9, 10 * tol) * std::abs(ref));
  }
}

TEST_CASE("rule cache hands out shared immutable rules") {
  auto& cache = RuleCache<double>::global();
  auto a = cache.get(12, 0.25, 0.5);
  auto b = cache.get(12, 0.25, 0.5);
  CHECK(a.get() == b.get());
  CHECK(a->order() == 12);
}
