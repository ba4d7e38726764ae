#include "speclink/koopman.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <numeric>

#include "speclink/chebyshev.hpp"

namespace speclink {

SnapshotPairs build_pairs(const Trajectory& traj) {
  const Eigen::Index n_snap = traj.snapshot_count();
  if (n_snap < 2) throw DataError("trajectory has fewer than 2 snapshots");
  const Eigen::Index cols = n_snap - 1;
  return {traj.basis, traj.snapshots.leftCols(cols), traj.snapshots.rightCols(cols)};
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff =
      static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * sigma.maxCoeff();
  Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] > cutoff) inv_sigma[i] = 1.0 / sigma[i];
  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
}

KoopmanMatrix estimate(const SnapshotPairs& pairs, double dt) {
  if (!(dt > 0.0)) throw ConfigError("timestep must be positive");
  if (pairs.a0.rows() != pairs.a1.rows() || pairs.a0.cols() != pairs.a1.cols())
    throw DataError("snapshot pair matrices differ in shape");
  if (pairs.a0.cols() < 1) throw DataError("need at least one snapshot transition");
  if (pairs.a0.rows() != pairs.basis.total_size())
    throw DataError("snapshot rows do not match basis size");
  if (!pairs.a0.allFinite() || !pairs.a1.allFinite())
    throw DataError("snapshot data contains non-finite values");
  if (pairs.a0.norm() == 0.0)
    throw DataError("degenerate snapshot data: every source state is zero");
  Eigen::MatrixXd k = pairs.a1 * pseudo_inverse(pairs.a0);
  return {pairs.basis, dt, std::move(k), Provenance::data_driven};
}

namespace {

// Rotate so the entry of largest modulus (lowest index on ties) is real
// and nonnegative.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index lead = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best) {
      best = mag;
      lead = i;
    }
  }
  if (best > 0.0) v *= std::conj(v[lead]) / std::abs(v[lead]);
}

bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

SpectralDecomposition decompose_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DataError("eigendecomposition needs a square matrix");
  if (!m.allFinite()) throw NumericalError("matrix has non-finite entries");

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed to converge (size " + std::to_string(m.rows()) +
                         ", Frobenius norm " + std::to_string(m.norm()) + ")");

  const Eigen::Index p = m.rows();
  Eigen::VectorXcd lambda = solver.eigenvalues();
  Eigen::MatrixXcd vec = solver.eigenvectors();

  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = vec.col(j).norm();
    if (norm > 0.0) vec.col(j) /= norm;
    fix_phase(vec.col(j));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(lambda[a]), mb = std::abs(lambda[b]);
    if (ma != mb) return ma > mb;
    if (lambda[a].real() != lambda[b].real()) return lambda[a].real() > lambda[b].real();
    if (lambda[a].imag() != lambda[b].imag()) return lambda[a].imag() > lambda[b].imag();
    return lex_less(vec.col(a), vec.col(b));
  });

  SpectralDecomposition dec;
  dec.eigenvalues.resize(p);
  dec.eigenvectors.resize(p, p);
  dec.residuals.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    dec.eigenvalues[j] = lambda[order[static_cast<std::size_t>(j)]];
    dec.eigenvectors.col(j) = vec.col(order[static_cast<std::size_t>(j)]);
    dec.residuals[j] = (m * dec.eigenvectors.col(j) - dec.eigenvalues[j] * dec.eigenvectors.col(j)).norm();
  }
  return dec;
}

SpectralDecomposition decompose(const KoopmanMatrix& k) { return decompose_matrix(k.entries); }

KoopmanModes koopman_modes(const SpectralDecomposition& dec, const BasisSpec& basis) {
  if (dec.size() != basis.total_size())
    throw DataError("decomposition size does not match basis");
  const Eigen::MatrixXd ct = dct_operator(basis).entries.transpose();
  KoopmanModes out;
  out.modes.resize(dec.size(), dec.size());
  out.modes.real() = ct * dec.eigenvectors.real();
  out.modes.imag() = ct * dec.eigenvectors.imag();
  return out;
}

}  // namespace speclink
