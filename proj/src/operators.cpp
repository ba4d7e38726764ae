#include "speclink/operators.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "speclink/chebyshev.hpp"

namespace speclink {

void PdeSpec::validate() const {
  if (name.empty()) throw ConfigError("PDE spec needs a name");
  if (dims < 1) throw ConfigError("PDE spec dims must be >= 1");
  if (terms.empty()) throw ConfigError("PDE spec '" + name + "' has no terms");
  for (const PdeTerm& t : terms) {
    if (static_cast<int>(t.derivative_orders.size()) != dims)
      throw ConfigError("PDE spec '" + name + "': term order list does not match dims");
    for (int o : t.derivative_orders)
      if (o < 0) throw ConfigError("PDE spec '" + name + "': negative derivative order");
  }
}

std::vector<PdeSpec> builtin_library(int dims, const PhysicalParams& params) {
  if (dims != 2)
    throw ConfigError("builtin candidate set is defined for 2 dimensions, got " +
                      std::to_string(dims));
  const PdeTerm ddx{-params.c_x, {1, 0}};
  const PdeTerm ddy{-params.c_y, {0, 1}};
  const PdeTerm dxx{params.nu, {2, 0}};
  const PdeTerm dyy{params.nu, {0, 2}};
  return {
      PdeSpec{"advection-x", 2, {ddx}},
      PdeSpec{"advection-y", 2, {ddy}},
      PdeSpec{"diffusion", 2, {dxx, dyy}},
      PdeSpec{"advection-diffusion", 2, {ddx, ddy, dxx, dyy}},
  };
}

const PdeSpec& find_pde(const std::vector<PdeSpec>& library, const std::string& name) {
  for (const PdeSpec& spec : library)
    if (spec.name == name) return spec;
  std::string known;
  for (const PdeSpec& spec : library) {
    if (!known.empty()) known += ", ";
    known += spec.name;
  }
  throw ConfigError("unknown PDE '" + name + "'; available: " + known);
}

GeneratorMatrix assemble_generator(const PdeSpec& spec, const BasisSpec& basis) {
  spec.validate();
  basis.validate();
  if (spec.dims != basis.dims())
    throw ConfigError("PDE spec '" + spec.name + "' has " + std::to_string(spec.dims) +
                      " dims but basis has " + std::to_string(basis.dims()));

  const Eigen::Index p = basis.total_size();
  std::vector<Eigen::MatrixXd> axis_diff(basis.sizes.size());
  for (int d = 1; d <= basis.dims(); ++d)
    axis_diff[d - 1] = diff_operator(basis, d).entries;

  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(p, p);
  for (const PdeTerm& term : spec.terms) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Identity(p, p);
    for (std::size_t d = 0; d < term.derivative_orders.size(); ++d)
      for (int rep = 0; rep < term.derivative_orders[d]; ++rep) op = axis_diff[d] * op;
    n += term.coefficient * op;
  }
  return {basis, std::move(n)};
}

KoopmanMatrix matrix_exponential(const GeneratorMatrix& gen, double dt) {
  if (!(dt > 0.0)) throw ConfigError("timestep must be positive");
  if (!gen.entries.allFinite()) throw NumericalError("generator has non-finite entries");
  Eigen::MatrixXd k = (dt * gen.entries).exp();
  return {gen.basis, dt, std::move(k), Provenance::equation_driven};
}

}  // namespace speclink
