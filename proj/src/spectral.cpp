#include "gpda/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gpda/linalg.hpp"

namespace gpda {

namespace {

// delta^2 I + (delta/beta) H + ((1 + 2 delta) rho/beta) A^T A; its determinant
// vanishes exactly at the eigenvalues 1 + delta of the GPDA iteration matrix
// (eliminate the dual block of T - (1+delta) Q and clear denominators).
Eigen::MatrixXd reduced_pencil(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A, double rho,
                               double beta, double delta) {
  const Eigen::Index n = H.rows();
  Eigen::MatrixXd M = delta * delta * Eigen::MatrixXd::Identity(n, n);
  M += (delta / beta) * H;
  M += ((1.0 + 2.0 * delta) * rho / beta) * (A.transpose() * A);
  return M;
}

double smallest_eigenvalue(const Eigen::MatrixXd& S) { return symmetric_eigen(S).values(0); }

double nearest_eigenvalue_gap(const Eigen::MatrixXd& iteration, double mu) {
  const Eigen::VectorXcd eigs = general_real_eigenvalues(iteration);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    gap = std::min(gap, std::abs(eigs(i) - std::complex<double>(mu, 0.0)));
  return gap;
}

// Scans for a probe where the smallest eigenvalue goes negative: doubling
// from 1e-4 up to 1e4, then descending decades down to 1e-12 in case the
// negativity window sits below the coarse grid. Returns -1 when none found.
template <class Fn>
double find_negative_probe(Fn&& value) {
  for (double p = 1e-4; p <= 1e4; p *= 2.0)
    if (value(p) < 0.0) return p;
  for (double p = 1e-5; p >= 1e-12; p /= 10.0)
    if (value(p) < 0.0) return p;
  return -1.0;
}

template <class Fn>
double grow_positive_bracket(Fn&& value, double lo, const char* who) {
  double hi = 2.0 * lo;
  while (value(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e8) throw std::runtime_error(std::string(who) + ": failed to bracket the instability");
  }
  return hi;
}

void check_positive_params(double rho, double beta, const char* who) {
  if (rho <= 0.0 || beta <= 0.0)
    throw std::invalid_argument(std::string(who) + ": rho and beta must be positive");
}

void check_two_block_shapes(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                            const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const char* who) {
  if (H.rows() != H.cols() || G.rows() != G.cols())
    throw std::invalid_argument(std::string(who) + ": block Hessians must be square");
  if (A.cols() != H.rows() || B.cols() != G.rows() || A.rows() != B.rows())
    throw std::invalid_argument(std::string(who) + ": constraint blocks do not match the Hessians");
}

}  // namespace

GpdaLinearization gpda_linearization(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A,
                                     double rho, double beta) {
  if (H.rows() != H.cols()) throw std::invalid_argument("gpda_linearization: H must be square");
  if (A.cols() != H.rows())
    throw std::invalid_argument("gpda_linearization: A must have one column per primal variable");
  check_positive_params(rho, beta, "gpda_linearization");
  const Eigen::Index n = H.rows();
  const Eigen::Index m = A.rows();
  GpdaLinearization lin;
  lin.Q = Eigen::MatrixXd::Identity(n + m, n + m);
  lin.Q.block(n, 0, m, n) = -rho * A;
  lin.T = Eigen::MatrixXd::Identity(n + m, n + m);
  lin.T.block(0, 0, n, n) -= (H + rho * A.transpose() * A) / beta;
  lin.T.block(0, n, n, m) = -A.transpose() / beta;
  return lin;
}

Eigen::MatrixXd gpda_iteration_matrix(const GpdaLinearization& lin) {
  // Q = I + N with N strictly lower block triangular and N^2 = 0, so the
  // inverse is exactly I - N = 2I - Q.
  const Eigen::Index s = lin.Q.rows();
  return (2.0 * Eigen::MatrixXd::Identity(s, s) - lin.Q) * lin.T;
}

UnstableMode unstable_eigenvalue_gpda(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A,
                                      double rho, double beta) {
  check_positive_params(rho, beta, "unstable_eigenvalue_gpda");
  const Eigen::MatrixXd penalized = H + rho * A.transpose() * A;
  if (beta <= spectral_norm_symmetric(penalized))
    throw std::invalid_argument(
        "unstable_eigenvalue_gpda: beta must exceed the norm of H + rho A^T A");

  auto phi = [&](double delta) {
    return smallest_eigenvalue(reduced_pencil(H, A, rho, beta, delta));
  };

  UnstableMode mode;
  const double neg = find_negative_probe(phi);
  if (neg < 0.0) return mode;

  double lo = neg;
  double hi = grow_positive_bracket(phi, neg, "unstable_eigenvalue_gpda");
  for (int it = 0; it < 240 && (hi - lo) > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) < 0.0 ? lo : hi) = mid;
  }
  mode.found = true;
  mode.delta = 0.5 * (lo + hi);
  mode.mu = 1.0 + mode.delta;
  mode.eigensolve_gap =
      nearest_eigenvalue_gap(gpda_iteration_matrix(gpda_linearization(H, A, rho, beta)), mode.mu);
  return mode;
}

GadmmLinearization gadmm_linearization(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                       const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       double rho, double beta) {
  check_two_block_shapes(H, G, A, B, "gadmm_linearization");
  check_positive_params(rho, beta, "gadmm_linearization");
  const Eigen::Index n1 = H.rows();
  const Eigen::Index n2 = G.rows();
  const Eigen::Index m = A.rows();
  const Eigen::Index s = n1 + n2 + m;
  GadmmLinearization lin;
  lin.P = Eigen::MatrixXd::Identity(s, s);
  lin.P.block(n1, 0, n2, n1) = (rho / beta) * B.transpose() * A;
  lin.P.block(n1 + n2, 0, m, n1) = -rho * A;
  lin.P.block(n1 + n2, n1, m, n2) = -rho * B;
  lin.T = Eigen::MatrixXd::Identity(s, s);
  lin.T.block(0, 0, n1, n1) -= (H + rho * A.transpose() * A) / beta;
  lin.T.block(0, n1, n1, n2) = -(rho / beta) * A.transpose() * B;
  lin.T.block(0, n1 + n2, n1, m) = -A.transpose() / beta;
  lin.T.block(n1, n1, n2, n2) -= (G + rho * B.transpose() * B) / beta;
  lin.T.block(n1, n1 + n2, n2, m) = -B.transpose() / beta;
  return lin;
}

Eigen::MatrixXd gadmm_iteration_matrix(const GadmmLinearization& lin) {
  // P is unit lower triangular entrywise, so a triangular solve applies
  // P^{-1} exactly (up to rounding) without forming the inverse.
  return lin.P.template triangularView<Eigen::UnitLower>().solve(lin.T);
}

Eigen::MatrixXd gadmm_transition_sign_variant(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                              const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                              double rho, double beta) {
  GadmmLinearization lin = gadmm_linearization(H, G, A, B, rho, beta);
  const Eigen::Index n1 = H.rows();
  const Eigen::Index n2 = G.rows();
  lin.T.block(n1, n1, n2, n2) += (2.0 * rho / beta) * (B.transpose() * B);
  return gadmm_iteration_matrix(lin);
}

Eigen::MatrixXd u_matrix(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                         const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rho,
                         double beta, double mu) {
  check_two_block_shapes(H, G, A, B, "u_matrix");
  check_positive_params(rho, beta, "u_matrix");
  const Eigen::Index n1 = H.rows();
  const Eigen::Index n2 = G.rows();
  const double om = 1.0 - mu;
  const double k = rho / beta;
  Eigen::MatrixXd U(n1 + n2, n1 + n2);
  U.block(0, 0, n1, n1) = om * om * Eigen::MatrixXd::Identity(n1, n1) + (mu - 1.0) / beta * H +
                          (2.0 * mu - 1.0) * k * (A.transpose() * A);
  U.block(0, n1, n1, n2) = (2.0 * mu - 1.0) * k * (A.transpose() * B);
  U.block(n1, 0, n2, n1) = mu * mu * k * (B.transpose() * A);
  U.block(n1, n1, n2, n2) = om * om * Eigen::MatrixXd::Identity(n2, n2) + (mu - 1.0) / beta * G +
                            (2.0 * mu - 1.0) * k * (B.transpose() * B);
  return U;
}

Eigen::MatrixXd symmetric_similarity(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                     const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                     double rho, double beta, double delta) {
  check_two_block_shapes(H, G, A, B, "symmetric_similarity");
  check_positive_params(rho, beta, "symmetric_similarity");
  if (2.0 * delta + 1.0 <= 0.0)
    throw std::invalid_argument("symmetric_similarity: needs delta > -1/2");
  const Eigen::Index n1 = H.rows();
  const Eigen::Index n2 = G.rows();
  const double mu = 1.0 + delta;
  const Eigen::MatrixXd U = u_matrix(H, G, A, B, rho, beta, mu);
  Eigen::MatrixXd S(n1 + n2, n1 + n2);
  S.block(0, 0, n1, n1) = U.block(0, 0, n1, n1);
  S.block(n1, n1, n2, n2) = U.block(n1, n1, n2, n2);
  const double off = (delta + 1.0) * std::sqrt(2.0 * delta + 1.0) * rho / beta;
  S.block(0, n1, n1, n2) = off * (A.transpose() * B);
  S.block(n1, 0, n2, n1) = S.block(0, n1, n1, n2).transpose();
  return S;
}

double gadmm_border_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rho,
                         double beta) {
  if (A.rows() != B.rows())
    throw std::invalid_argument("gadmm_border_gain: A and B must share the row dimension");
  check_positive_params(rho, beta, "gadmm_border_gain");
  const Eigen::Index n1 = A.cols();
  const Eigen::Index n2 = B.cols();
  const double k = rho / beta;
  const Eigen::MatrixXd cross = k * (A.transpose() * B);
  Eigen::MatrixXd bordered(n1 + n2, n1 + n2);
  bordered.block(0, 0, n1, n1) = Eigen::MatrixXd::Identity(n1, n1);
  bordered.block(0, n1, n1, n2) = cross;
  bordered.block(n1, 0, n2, n1) = cross.transpose();
  bordered.block(n1, n1, n2, n2) =
      cross.transpose() * cross + Eigen::MatrixXd::Identity(n2, n2);
  return spectral_norm_symmetric(bordered);
}

double gadmm_probe_delta(double sigma, double d, double beta, Eigen::Index s) {
  if (sigma <= 0.0 || d <= 0.0 || beta <= 0.0 || s < 1)
    throw std::invalid_argument("gadmm_probe_delta: needs sigma, d, beta > 0 and s >= 1");
  return sigma / (2.0 * d * beta * (2.0 * static_cast<double>(s) - 1.0));
}

UnstableMode unstable_eigenvalue_gadmm(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                       const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       double rho, double beta, double sigma) {
  check_two_block_shapes(H, G, A, B, "unstable_eigenvalue_gadmm");
  check_positive_params(rho, beta, "unstable_eigenvalue_gadmm");
  if (sigma <= 0.0)
    throw std::invalid_argument("unstable_eigenvalue_gadmm: sigma must be positive");

  auto psi = [&](double delta) {
    return smallest_eigenvalue(symmetric_similarity(H, G, A, B, rho, beta, delta));
  };

  UnstableMode mode;
  const Eigen::Index s = H.rows() + G.rows();
  const double probe = gadmm_probe_delta(sigma, gadmm_border_gain(A, B, rho, beta), beta, s);
  double neg = psi(probe) < 0.0 ? probe : find_negative_probe(psi);
  if (neg < 0.0) return mode;

  double lo = neg;
  double hi = grow_positive_bracket(psi, neg, "unstable_eigenvalue_gadmm");
  for (int it = 0; it < 240 && (hi - lo) > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (psi(mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  if (std::abs(psi(root)) > 1e-9)
    throw std::runtime_error("unstable_eigenvalue_gadmm: bisection stalled before certifying");
  mode.found = true;
  mode.delta = root;
  mode.mu = 1.0 + root;
  mode.eigensolve_gap = nearest_eigenvalue_gap(
      gadmm_iteration_matrix(gadmm_linearization(H, G, A, B, rho, beta)), mode.mu);
  return mode;
}

Eigen::MatrixXd numeric_step_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
    const Eigen::VectorXd& z0) {
  if (!map) throw std::invalid_argument("numeric_step_jacobian: empty map");
  const Eigen::Index n = z0.size();
  const double h = 1e-6 * (1.0 + z0.norm());
  Eigen::MatrixXd J(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd zp = z0;
    Eigen::VectorXd zm = z0;
    zp(j) += h;
    zm(j) -= h;
    const Eigen::VectorXd fp = map(zp);
    const Eigen::VectorXd fm = map(zm);
    if (fp.size() != n || fm.size() != n)
      throw std::invalid_argument("numeric_step_jacobian: map must preserve dimension");
    J.col(j) = (fp - fm) / (2.0 * h);
  }
  return J;
}

namespace {

bool augment(int i, const std::vector<std::vector<char>>& allowed, std::vector<int>& owner,
             std::vector<char>& seen) {
  const int n = static_cast<int>(allowed.size());
  for (int j = 0; j < n; ++j) {
    if (!allowed[i][j] || seen[j]) continue;
    seen[j] = 1;
    if (owner[j] < 0 || augment(owner[j], allowed, owner, seen)) {
      owner[j] = i;
      return true;
    }
  }
  return false;
}

bool perfect_matching_within(const Eigen::MatrixXd& cost, double threshold) {
  const int n = static_cast<int>(cost.rows());
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) allowed[i][j] = cost(i, j) <= threshold ? 1 : 0;
  std::vector<int> owner(n, -1);
  std::vector<char> seen(n);
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(i, allowed, owner, seen)) return false;
  }
  return true;
}

}  // namespace

double optimal_matching_distance(const Eigen::MatrixXd& F, const Eigen::MatrixXd& F_tilde) {
  if (F.rows() != F.cols() || F_tilde.rows() != F_tilde.cols() || F.rows() != F_tilde.rows())
    throw std::invalid_argument("optimal_matching_distance: matrices must be square, equal size");
  const Eigen::Index n = F.rows();
  if (n == 0) return 0.0;
  const Eigen::VectorXcd a = general_real_eigenvalues(F);
  const Eigen::VectorXcd b = general_real_eigenvalues(F_tilde);
  Eigen::MatrixXd cost(n, n);
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      cost(i, j) = std::abs(a(i) - b(j));
      levels.push_back(cost(i, j));
    }
  std::sort(levels.begin(), levels.end());
  // The minimax value is one of the pairing costs; binary search for the
  // smallest threshold admitting a perfect matching.
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching_within(cost, levels[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return levels[lo];
}

}  // namespace gpda
