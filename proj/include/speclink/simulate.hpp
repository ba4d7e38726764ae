#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "speclink/operators.hpp"

namespace speclink {

/// Initial field on [-1,1]^D, either a Gaussian bump or a random field with
/// geometrically decaying Chebyshev spectrum (deterministic in the seed).
struct InitialCondition {
  enum class Kind { gaussian, random_smooth };

  Kind kind = Kind::gaussian;

  // gaussian
  Eigen::VectorXd center;  // empty means the origin
  double sigma = 0.3;
  double amplitude = 1.0;

  // random_smooth
  std::uint64_t seed = 1;
  double decay = 0.7;  // per total polynomial degree, in (0,1)

  static InitialCondition gaussian(double sigma = 0.3, double amplitude = 1.0,
                                   Eigen::VectorXd center = {});
  static InitialCondition random_smooth(std::uint64_t seed, double decay = 0.7);

  void validate(int dims) const;
};

/// Time series of coefficient vectors; column k holds the state after k steps.
struct Trajectory {
  BasisSpec basis;
  double dt = 0.0;
  std::string pde_name;
  Eigen::MatrixXd snapshots;

  Eigen::Index snapshot_count() const { return snapshots.cols(); }
};

/// Sample the initial field and transform to scaled coefficients.
CoeffVector make_ic(const InitialCondition& ic, const BasisSpec& basis);

/// One classical 4-stage Runge-Kutta step for da/dt = N a.
CoeffVector rk4_step(const GeneratorMatrix& gen, const CoeffVector& a, double dt);

/// RK4-integrate the candidate PDE from the initial condition; snapshot 0 is
/// the IC and there are floor(horizon/dt) steps after it.
Trajectory simulate(const PdeSpec& spec, const InitialCondition& ic, const BasisSpec& basis,
                    double dt, double horizon);

/// Propagate by repeated multiplication with a one-step Koopman matrix.
Trajectory exact_propagate(const KoopmanMatrix& k, const CoeffVector& a0, Eigen::Index steps);

}  // namespace speclink
