#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "speclink/basis.hpp"

namespace speclink {

namespace detail {
template <typename Scalar>
void check_resolution(Eigen::Index m) {
  if (m < 2 || m % 2 != 0)
    throw ConfigError("resolution must be even and >= 2, got " + std::to_string(m));
}
}  // namespace detail

/// Interior Chebyshev nodes p_n = cos((2n+1) pi / (2M)), n = 0..M-1.
/// Strictly decreasing, all inside the open interval (-1, 1).
template <typename Scalar = double>
Eigen::Vector<Scalar, Eigen::Dynamic> chebyshev_nodes(Eigen::Index m) {
  detail::check_resolution<Scalar>(m);
  Eigen::Vector<Scalar, Eigen::Dynamic> p(m);
  const Scalar pi = Scalar(EIGEN_PI);
  for (Eigen::Index n = 0; n < m; ++n)
    p[n] = std::cos(Scalar(2 * n + 1) * pi / Scalar(2 * m));
  return p;
}

/// Per-coefficient scaling factors: g_0 = M^{-1/2}, g_k = (2/M)^{1/2} for k >= 1.
template <typename Scalar = double>
Eigen::Vector<Scalar, Eigen::Dynamic> dct_scaling(Eigen::Index m) {
  detail::check_resolution<Scalar>(m);
  Eigen::Vector<Scalar, Eigen::Dynamic> g(m);
  g[0] = Scalar(1) / std::sqrt(Scalar(m));
  for (Eigen::Index k = 1; k < m; ++k) g[k] = std::sqrt(Scalar(2) / Scalar(m));
  return g;
}

/// Orthonormal DCT-II matrix, C(k, n) = g_k cos(k (2n+1) pi / (2M)).
/// Rows map node samples to scaled Chebyshev coefficients; C C^T = I.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dct_matrix(Eigen::Index m) {
  detail::check_resolution<Scalar>(m);
  const auto g = dct_scaling<Scalar>(m);
  const Scalar pi = Scalar(EIGEN_PI);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c(m, m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index n = 0; n < m; ++n)
      c(k, n) = g[k] * std::cos(Scalar(k) * Scalar(2 * n + 1) * pi / Scalar(2 * m));
  return c;
}

/// Derivative matrix acting on SCALED coefficients.
///
/// The classical (unscaled) Chebyshev recurrence gives D(k, n) = 2n / c_k for
/// n > k with n - k odd, where c_0 = 2 and c_k = 1 otherwise; conjugating by
/// the DCT scaling (G^-1 D G) moves it to the scaled convention used
/// everywhere in this project. Strictly upper triangular, hence nilpotent.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> diff_matrix(Eigen::Index m) {
  detail::check_resolution<Scalar>(m);
  const auto g = dct_scaling<Scalar>(m);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Scalar ck = (k == 0) ? Scalar(2) : Scalar(1);
    for (Eigen::Index n = k + 1; n < m; n += 2)
      d(k, n) = (Scalar(2) * Scalar(n) / ck) * (g[n] / g[k]);
  }
  return d;
}

/// Flattened tensor grid: row n holds the D coordinates of node n.
Eigen::MatrixXd grid_points(const BasisSpec& basis);

/// Full D-dimensional orthonormal DCT-II as a dense Kronecker product.
LinearOperatorMatrix dct_operator(const BasisSpec& basis);

/// Coefficient-space partial derivative along `axis` (1-based, per the
/// Kronecker order documented on BasisSpec).
LinearOperatorMatrix diff_operator(const BasisSpec& basis, int axis);

/// Node samples -> scaled coefficients (exact linear map on the grid).
CoeffVector forward(const NodeVector& u);

/// Scaled coefficients -> node samples; inverse of forward.
NodeVector inverse(const CoeffVector& a);

/// Evaluate the truncated expansion at an arbitrary point of [-1,1]^D.
double eval_at(const CoeffVector& a, const Eigen::VectorXd& point);

}  // namespace speclink
