#pragma once

#include <Eigen/Dense>

namespace gpda {

/// Eigendecomposition of a real symmetric matrix.
struct SymmetricEigen {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< orthonormal; vectors.col(k) pairs with values(k)
};

/// Full spectrum of a symmetric matrix, S = V diag(w) V^T.
/// Throws std::invalid_argument when S is not square or not symmetric
/// (max |S - S^T| above 1e-12 * max(1, max|S|)).
SymmetricEigen symmetric_eigen(const Eigen::Ref<const Eigen::MatrixXd>& S);

/// Largest |eigenvalue| of a symmetric matrix (its spectral norm).
double spectral_norm_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& S);

/// Largest singular value of a general rectangular matrix.
double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// Eigenvalues of a general real square matrix, sorted lexicographically by
/// (real, imag) so repeated queries are reproducible.
Eigen::VectorXcd general_real_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// Orthonormal basis of {y : Ay = 0}, as matrix columns. Singular values at or
/// below zero_tol * sigma_max(A) count as zero; pass zero_tol <= 0 for the
/// default 1e-9. Full column rank yields an n x 0 result; a matrix with no
/// rows yields the identity.
Eigen::MatrixXd null_space_basis(const Eigen::Ref<const Eigen::MatrixXd>& A,
                                 double zero_tol = -1.0);

/// Smallest eigenvalue of a symmetric PSD matrix that exceeds the cutoff
/// zero_tol * max|eigenvalue| (default zero_tol 1e-9). Throws
/// std::invalid_argument when no eigenvalue clears the cutoff (the matrix is
/// numerically zero) or when an eigenvalue sits below -cutoff (not PSD).
double smallest_nonzero_eigenvalue(const Eigen::Ref<const Eigen::MatrixXd>& S,
                                   double zero_tol = -1.0);

}  // namespace gpda
