#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "speclink/basis.hpp"

namespace speclink {

/// One additive term of a linear spatial operator: coefficient times a mixed
/// partial derivative of the given per-axis orders.
struct PdeTerm {
  double coefficient = 0.0;
  std::vector<int> derivative_orders;  // (o_1, ..., o_D), all >= 0
};

/// A candidate linear PDE  du/dt = sum_i coeff_i * d^{o_i} u.
struct PdeSpec {
  std::string name;
  int dims = 0;
  std::vector<PdeTerm> terms;

  void validate() const;
};

/// Physical coefficients for the builtin candidate set.
struct PhysicalParams {
  double c_x = 1.0;
  double c_y = 1.0;
  double nu = 0.1;
};

/// Coefficient-space matrix N of a spatial operator: da/dt = N a.
struct GeneratorMatrix {
  BasisSpec basis;
  Eigen::MatrixXd entries;
};

enum class Provenance { equation_driven, data_driven };

/// One-step propagator on scaled coefficients: a_{k+1} ~= K a_k.
struct KoopmanMatrix {
  BasisSpec basis;
  double dt = 0.0;
  Eigen::MatrixXd entries;
  Provenance provenance = Provenance::equation_driven;
};

/// The four-candidate testbed: advection along each axis, isotropic
/// diffusion, and their combination. Transport sign convention:
/// "advection-x" solves u_t + c_x u_x = 0, i.e. the operator is -c_x d/dx.
std::vector<PdeSpec> builtin_library(int dims, const PhysicalParams& params = {});

/// Lookup by name with a ConfigError that lists the available names.
const PdeSpec& find_pde(const std::vector<PdeSpec>& library, const std::string& name);

/// N = sum_terms coeff * prod_d (D^(d))^{o_d}, composed in coefficient space.
GeneratorMatrix assemble_generator(const PdeSpec& spec, const BasisSpec& basis);

/// K = exp(dt N) via scaling-and-squaring with a Pade approximant.
KoopmanMatrix matrix_exponential(const GeneratorMatrix& gen, double dt);

}  // namespace speclink
