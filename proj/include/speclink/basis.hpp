#pragma once

#include <Eigen/Dense>
#include <vector>

#include "speclink/errors.hpp"

namespace speclink {

/// Layout of a tensor-product Chebyshev basis on [-1,1]^D.
///
/// Flat vector ordering is fixed project-wide and asserted here, nowhere else:
/// axis 1 varies fastest,
///
///   flat(n_1, ..., n_D) = n_1 + M_1 n_2 + M_1 M_2 n_3 + ...
///
/// which matches the Kronecker factor order I_{M_D} x ... x A_{M_1} used by
/// every operator assembled on top of this basis.
struct BasisSpec {
  std::vector<Eigen::Index> sizes;  // per-axis resolutions (M_1, ..., M_D)

  BasisSpec() = default;
  explicit BasisSpec(std::vector<Eigen::Index> per_axis) : sizes(std::move(per_axis)) {
    validate();
  }

  /// D axes of identical resolution m.
  static BasisSpec uniform(int dims, Eigen::Index m) {
    if (dims < 1) throw ConfigError("basis dims must be >= 1");
    return BasisSpec(std::vector<Eigen::Index>(static_cast<std::size_t>(dims), m));
  }

  int dims() const { return static_cast<int>(sizes.size()); }

  Eigen::Index total_size() const {
    Eigen::Index p = 1;
    for (Eigen::Index m : sizes) p *= m;
    return p;
  }

  /// Every resolution must be even and >= 2.
  void validate() const {
    if (sizes.empty()) throw ConfigError("basis needs at least one axis");
    for (Eigen::Index m : sizes) {
      if (m < 2 || m % 2 != 0)
        throw ConfigError("per-axis resolution must be even and >= 2, got " + std::to_string(m));
    }
  }

  Eigen::Index flat_index(const std::vector<Eigen::Index>& multi) const {
    Eigen::Index flat = 0, stride = 1;
    for (std::size_t d = 0; d < sizes.size(); ++d) {
      flat += multi[d] * stride;
      stride *= sizes[d];
    }
    return flat;
  }

  std::vector<Eigen::Index> multi_index(Eigen::Index flat) const {
    std::vector<Eigen::Index> multi(sizes.size());
    for (std::size_t d = 0; d < sizes.size(); ++d) {
      multi[d] = flat % sizes[d];
      flat /= sizes[d];
    }
    return multi;
  }

  bool operator==(const BasisSpec&) const = default;
};

/// Samples u(p_n) on the tensor grid of interior Chebyshev nodes, flat order.
struct NodeVector {
  BasisSpec basis;
  Eigen::VectorXd values;
};

/// Scaled Chebyshev coefficients (orthonormal DCT-II convention), flat order.
struct CoeffVector {
  BasisSpec basis;
  Eigen::VectorXd values;
};

/// Dense P x P matrix acting on flat coefficient or node vectors.
struct LinearOperatorMatrix {
  BasisSpec basis;
  Eigen::MatrixXd entries;
};

}  // namespace speclink
