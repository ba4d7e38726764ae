#include "speclink/chebyshev.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace speclink {

namespace {

// Kronecker chain A_{M_D} x ... x A_{M_1} for per-axis factors produced by
// `factor`; identity on every axis except where `factor` says otherwise.
template <typename F>
Eigen::MatrixXd kron_chain(const BasisSpec& basis, F&& factor) {
  Eigen::MatrixXd acc = factor(0);
  for (int d = 1; d < basis.dims(); ++d) {
    Eigen::MatrixXd next = factor(d);
    acc = Eigen::kroneckerProduct(next, acc).eval();
  }
  return acc;
}

}  // namespace

Eigen::MatrixXd grid_points(const BasisSpec& basis) {
  basis.validate();
  const Eigen::Index p = basis.total_size();
  Eigen::MatrixXd pts(p, basis.dims());
  std::vector<Eigen::VectorXd> axis_nodes;
  axis_nodes.reserve(basis.sizes.size());
  for (Eigen::Index m : basis.sizes) axis_nodes.push_back(chebyshev_nodes(m));
  for (Eigen::Index n = 0; n < p; ++n) {
    const auto multi = basis.multi_index(n);
    for (int d = 0; d < basis.dims(); ++d) pts(n, d) = axis_nodes[d][multi[d]];
  }
  return pts;
}

LinearOperatorMatrix dct_operator(const BasisSpec& basis) {
  basis.validate();
  return {basis, kron_chain(basis, [&](int d) { return dct_matrix(basis.sizes[d]); })};
}

LinearOperatorMatrix diff_operator(const BasisSpec& basis, int axis) {
  basis.validate();
  if (axis < 1 || axis > basis.dims())
    throw ConfigError("derivative axis " + std::to_string(axis) + " out of range 1.." +
                      std::to_string(basis.dims()));
  return {basis, kron_chain(basis, [&](int d) -> Eigen::MatrixXd {
            if (d == axis - 1) return diff_matrix(basis.sizes[d]);
            return Eigen::MatrixXd::Identity(basis.sizes[d], basis.sizes[d]);
          })};
}

CoeffVector forward(const NodeVector& u) {
  u.basis.validate();
  if (u.values.size() != u.basis.total_size())
    throw DataError("node vector length does not match basis");
  return {u.basis, dct_operator(u.basis).entries * u.values};
}

NodeVector inverse(const CoeffVector& a) {
  a.basis.validate();
  if (a.values.size() != a.basis.total_size())
    throw DataError("coefficient vector length does not match basis");
  return {a.basis, dct_operator(a.basis).entries.transpose() * a.values};
}

double eval_at(const CoeffVector& a, const Eigen::VectorXd& point) {
  const BasisSpec& basis = a.basis;
  basis.validate();
  if (a.values.size() != basis.total_size())
    throw DataError("coefficient vector length does not match basis");
  if (point.size() != basis.dims())
    throw ConfigError("evaluation point has wrong dimension");
  for (int d = 0; d < basis.dims(); ++d)
    if (!(point[d] >= -1.0 && point[d] <= 1.0))
      throw ConfigError("evaluation point outside [-1,1]^D");

  // Per-axis Chebyshev values T_k(q_d) by the three-term recurrence, and the
  // per-axis scaling that converts scaled coefficients back to the plain
  // T-basis.
  std::vector<Eigen::VectorXd> t_vals(basis.sizes.size());
  std::vector<Eigen::VectorXd> scalings(basis.sizes.size());
  for (std::size_t d = 0; d < basis.sizes.size(); ++d) {
    const Eigen::Index m = basis.sizes[d];
    Eigen::VectorXd t(m);
    t[0] = 1.0;
    if (m > 1) t[1] = point[static_cast<Eigen::Index>(d)];
    for (Eigen::Index k = 2; k < m; ++k)
      t[k] = 2.0 * point[static_cast<Eigen::Index>(d)] * t[k - 1] - t[k - 2];
    t_vals[d] = std::move(t);
    scalings[d] = dct_scaling(m);
  }

  double sum = 0.0;
  const Eigen::Index p = basis.total_size();
  for (Eigen::Index n = 0; n < p; ++n) {
    const auto multi = basis.multi_index(n);
    double term = a.values[n];
    for (std::size_t d = 0; d < basis.sizes.size(); ++d)
      term *= scalings[d][multi[d]] * t_vals[d][multi[d]];
    sum += term;
  }
  return sum;
}

}  // namespace speclink
