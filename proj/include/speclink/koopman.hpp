#pragma once

#include <Eigen/Dense>

#include "speclink/operators.hpp"
#include "speclink/simulate.hpp"

namespace speclink {

/// Shift-aligned snapshot matrices: column k of a0 is a_k, of a1 is a_{k+1}.
struct SnapshotPairs {
  BasisSpec basis;
  Eigen::MatrixXd a0;
  Eigen::MatrixXd a1;
};

SnapshotPairs build_pairs(const Trajectory& traj);

/// Moore-Penrose pseudo-inverse by SVD; singular values at or below
/// rows * machine-epsilon relative to the largest are treated as zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m);

/// Least-squares one-step map K = A1 A0^+, provenance data_driven.
/// Rejects all-zero snapshot data instead of returning a zero matrix.
KoopmanMatrix estimate(const SnapshotPairs& pairs, double dt);

/// Eigenpairs of a real square matrix under deterministic conventions:
///   - every eigenvector has unit 2-norm;
///   - the entry of largest modulus in each vector is real and nonnegative
///     (ties broken by lowest index);
///   - pairs are ordered by descending |lambda|, then descending Re, then
///     descending Im, then ascending lexicographic vector comparison;
///   - conjugate pairs of a real matrix therefore sit adjacently.
/// Residuals ||K v - lambda v||_2 are kept per pair so defectiveness is
/// visible to callers.
struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // column j pairs with eigenvalues[j]
  Eigen::VectorXd residuals;

  Eigen::Index size() const { return eigenvalues.size(); }
};

SpectralDecomposition decompose_matrix(const Eigen::MatrixXd& m);
SpectralDecomposition decompose(const KoopmanMatrix& k);

/// Node-space patterns xi_j = C^T v_j for each eigenvector.
struct KoopmanModes {
  Eigen::MatrixXcd modes;
};

KoopmanModes koopman_modes(const SpectralDecomposition& dec, const BasisSpec& basis);

}  // namespace speclink
