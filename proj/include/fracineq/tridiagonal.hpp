#ifndef FRACINEQ_TRIDIAGONAL_HPP
#define FRACINEQ_TRIDIAGONAL_HPP

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fracineq {

template <std::floating_point Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each normalized eigenvector, sorted by eigenvalue.
template <std::floating_point Scalar>
struct TridiagonalSpectrum {
  VectorX<Scalar> eigenvalues;
  VectorX<Scalar> first_components;
};

/// Implicit-shift QL iteration (Wilkinson shift) on the symmetric tridiagonal
/// matrix with the given diagonal and sub-diagonal (size n-1).
///
/// Only row 0 of the eigenvector matrix is accumulated, which is all the
/// Golub-Welsch construction needs.
template <std::floating_point Scalar>
TridiagonalSpectrum<Scalar> tridiagonal_eigen(const VectorX<Scalar>& diagonal,
                                              const VectorX<Scalar>& subdiagonal) {
  const Eigen::Index n = diagonal.size();
  if (n == 0 || subdiagonal.size() != std::max<Eigen::Index>(n - 1, 0)) {
    throw std::invalid_argument("tridiagonal_eigen: inconsistent sizes");
  }
  VectorX<Scalar> d = diagonal;
  VectorX<Scalar> e = VectorX<Scalar>::Zero(n);
  e.head(n - 1) = subdiagonal;
  VectorX<Scalar> z = VectorX<Scalar>::Zero(n);
  z(0) = 1;

  constexpr int kMaxIterations = 60;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (Eigen::Index l = 0; l < n; ++l) {
    int iterations = 0;
    while (true) {
      Eigen::Index m = l;
      for (; m < n - 1; ++m) {
        const Scalar dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > kMaxIterations) {
        throw std::runtime_error("tridiagonal_eigen: QL iteration did not converge");
      }
      Scalar g = (d(l + 1) - d(l)) / (2 * e(l));
      Scalar r = std::hypot(g, Scalar(1));
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      Scalar s = 1;
      Scalar c = 1;
      Scalar p = 0;
      Eigen::Index i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        Scalar f = s * e(i);
        const Scalar b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0) {
          d(i + 1) -= p;
          e(m) = 0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        f = z(i + 1);
        z(i + 1) = s * z(i) + c * f;
        z(i) = c * z(i) - s * f;
      }
      if (underflow) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0;
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });
  TridiagonalSpectrum<Scalar> out{VectorX<Scalar>(n), VectorX<Scalar>(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = d(order[static_cast<std::size_t>(k)]);
    out.first_components(k) = z(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace fracineq

#endif  // FRACINEQ_TRIDIAGONAL_HPP
