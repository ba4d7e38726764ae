#include "speclink/simulate.hpp"

#include <cmath>
#include <random>

#include "speclink/chebyshev.hpp"

namespace speclink {

InitialCondition InitialCondition::gaussian(double sigma, double amplitude,
                                            Eigen::VectorXd center) {
  InitialCondition ic;
  ic.kind = Kind::gaussian;
  ic.sigma = sigma;
  ic.amplitude = amplitude;
  ic.center = std::move(center);
  return ic;
}

InitialCondition InitialCondition::random_smooth(std::uint64_t seed, double decay) {
  InitialCondition ic;
  ic.kind = Kind::random_smooth;
  ic.seed = seed;
  ic.decay = decay;
  return ic;
}

void InitialCondition::validate(int dims) const {
  switch (kind) {
    case Kind::gaussian:
      if (!(sigma > 0.0)) throw ConfigError("gaussian width must be positive");
      if (center.size() != 0 && center.size() != dims)
        throw ConfigError("gaussian center dimension mismatch");
      for (Eigen::Index d = 0; d < center.size(); ++d)
        if (!(center[d] >= -1.0 && center[d] <= 1.0))
          throw ConfigError("gaussian center outside [-1,1]^D");
      break;
    case Kind::random_smooth:
      if (!(decay > 0.0 && decay < 1.0))
        throw ConfigError("spectral decay rate must lie in (0,1)");
      break;
  }
}

CoeffVector make_ic(const InitialCondition& ic, const BasisSpec& basis) {
  basis.validate();
  ic.validate(basis.dims());
  const Eigen::Index p = basis.total_size();

  if (ic.kind == InitialCondition::Kind::gaussian) {
    Eigen::VectorXd center = ic.center.size() ? ic.center : Eigen::VectorXd::Zero(basis.dims());
    const Eigen::MatrixXd pts = grid_points(basis);
    Eigen::VectorXd u(p);
    for (Eigen::Index n = 0; n < p; ++n) {
      const double r2 = (pts.row(n).transpose() - center).squaredNorm();
      u[n] = ic.amplitude * std::exp(-r2 / (2.0 * ic.sigma * ic.sigma));
    }
    return forward({basis, std::move(u)});
  }

  // random_smooth: i.i.d. standard normal coefficients damped by
  // decay^(total polynomial degree).
  std::mt19937_64 rng(ic.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd a(p);
  for (Eigen::Index n = 0; n < p; ++n) {
    const auto multi = basis.multi_index(n);
    Eigen::Index degree = 0;
    for (Eigen::Index md : multi) degree += md;
    a[n] = normal(rng) * std::pow(ic.decay, static_cast<double>(degree));
  }
  return {basis, std::move(a)};
}

CoeffVector rk4_step(const GeneratorMatrix& gen, const CoeffVector& a, double dt) {
  if (gen.basis != a.basis) throw DataError("rk4 step: generator/state basis mismatch");
  if (!(dt > 0.0)) throw ConfigError("timestep must be positive");
  if (!a.values.allFinite()) throw NumericalError("rk4 step: non-finite state");
  const Eigen::MatrixXd& n = gen.entries;
  const Eigen::VectorXd k1 = n * a.values;
  const Eigen::VectorXd k2 = n * (a.values + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = n * (a.values + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = n * (a.values + dt * k3);
  return {a.basis, a.values + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)};
}

Trajectory simulate(const PdeSpec& spec, const InitialCondition& ic, const BasisSpec& basis,
                    double dt, double horizon) {
  if (!(dt > 0.0)) throw ConfigError("timestep must be positive");
  if (!(horizon >= dt)) throw ConfigError("horizon must be at least one timestep");
  const GeneratorMatrix gen = assemble_generator(spec, basis);
  const auto steps = static_cast<Eigen::Index>(std::floor(horizon / dt));

  Trajectory traj;
  traj.basis = basis;
  traj.dt = dt;
  traj.pde_name = spec.name;
  traj.snapshots.resize(basis.total_size(), steps + 1);

  CoeffVector a = make_ic(ic, basis);
  traj.snapshots.col(0) = a.values;
  for (Eigen::Index k = 0; k < steps; ++k) {
    a = rk4_step(gen, a, dt);
    traj.snapshots.col(k + 1) = a.values;
  }
  return traj;
}

Trajectory exact_propagate(const KoopmanMatrix& k, const CoeffVector& a0, Eigen::Index steps) {
  if (k.basis != a0.basis) throw DataError("propagate: matrix/state basis mismatch");
  if (steps < 1) throw ConfigError("propagate needs at least one step");

  Trajectory traj;
  traj.basis = k.basis;
  traj.dt = k.dt;
  traj.pde_name = "exact";
  traj.snapshots.resize(k.basis.total_size(), steps + 1);
  traj.snapshots.col(0) = a0.values;
  for (Eigen::Index j = 0; j < steps; ++j)
    traj.snapshots.col(j + 1) = k.entries * traj.snapshots.col(j);
  return traj;
}

}  // namespace speclink
