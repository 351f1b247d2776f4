#include "gpda/linalg.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

namespace gpda {

namespace {

void require_square(const Eigen::Ref<const Eigen::MatrixXd>& S, const char* who) {
  if (S.rows() != S.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

void require_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& S, const char* who) {
  require_square(S, who);
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  const double skew = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix is not symmetric (max skew " +
                                std::to_string(skew) + ")");
}

}  // namespace

SymmetricEigen symmetric_eigen(const Eigen::Ref<const Eigen::MatrixXd>& S) {
  require_symmetric(S, "symmetric_eigen");
  // Work on the symmetrized copy so tiny representational skew cannot leak
  // into the spectrum.
  const Eigen::MatrixXd sym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric_eigen: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_norm_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& S) {
  const SymmetricEigen eig = symmetric_eigen(S);
  if (eig.values.size() == 0) return 0.0;
  return eig.values.cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues()(0);
}

Eigen::VectorXcd general_real_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  require_square(A, "general_real_eigenvalues");
  if (A.rows() == 0) return Eigen::VectorXcd(0);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("general_real_eigenvalues: QR iteration did not converge");
  Eigen::VectorXcd values = solver.eigenvalues();
  std::vector<std::complex<double>> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = sorted[static_cast<size_t>(i)];
  return values;
}

Eigen::MatrixXd null_space_basis(const Eigen::Ref<const Eigen::MatrixXd>& A, double zero_tol) {
  if (zero_tol <= 0) zero_tol = 1e-9;
  const Eigen::Index n = A.cols();
  if (A.rows() == 0 || n == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = zero_tol * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  // Right singular vectors beyond the rank span the kernel.
  return svd.matrixV().rightCols(n - rank);
}

double smallest_nonzero_eigenvalue(const Eigen::Ref<const Eigen::MatrixXd>& S, double zero_tol) {
  if (zero_tol <= 0) zero_tol = 1e-9;
  const SymmetricEigen eig = symmetric_eigen(S);
  if (eig.values.size() == 0)
    throw std::invalid_argument("smallest_nonzero_eigenvalue: empty matrix");
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double cutoff = zero_tol * scale;
  if (eig.values(0) < -cutoff)
    throw std::invalid_argument("smallest_nonzero_eigenvalue: matrix is not PSD (min eigenvalue " +
                                std::to_string(eig.values(0)) + ")");
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > cutoff) return eig.values(i);
  throw std::invalid_argument(
      "smallest_nonzero_eigenvalue: all eigenvalues are numerically zero");
}

}  // namespace gpda
