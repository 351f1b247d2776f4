#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gpda {

/// One-step linearization of the primal-dual iteration at a stationary point
/// with objective Hessian H: the error e = (dx, dlambda) obeys Q e+ = T e with
///   Q = [[ I,     0 ],        T = [[ I - (1/beta)(H + rho A^T A),  -(1/beta) A^T ],
///        [-rho A, I ]],            [ 0,                             I            ]].
/// Q is unit lower block triangular, so the iteration matrix Q^{-1} T exists
/// for every parameter choice.
struct GpdaLinearization {
  Eigen::MatrixXd Q, T;
};

GpdaLinearization gpda_linearization(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A,
                                     double rho, double beta);

/// Q^{-1} T assembled blockwise (Q^{-1} = [[I, 0],[rho A, I]], exact).
Eigen::MatrixXd gpda_iteration_matrix(const GpdaLinearization& lin);

/// Result of the instability search. When found, mu = 1 + delta is an
/// eigenvalue of the iteration matrix exceeding one, and eigensolve_gap is
/// the distance from mu to the nearest directly computed eigenvalue.
struct UnstableMode {
  bool found = false;
  double delta = 0.0;
  double mu = 1.0;
  double eigensolve_gap = 0.0;
};

/// Certifies an eigenvalue 1 + delta* > 1 of the GPDA iteration matrix by
/// bisecting the smallest eigenvalue of the reduced pencil
///   M(delta) = delta^2 I + (delta/beta) H + ((1 + 2 delta) rho/beta) A^T A,
/// whose determinant vanishes exactly at eigenvalues 1 + delta of Q^{-1} T.
/// Returns found = false when the pencil stays positive on every probe (the
/// point is not a strict saddle). Requires beta > ||H + rho A^T A||.
UnstableMode unstable_eigenvalue_gpda(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A,
                                      double rho, double beta);

/// Two-block analog at a stationary point with block Hessians H, G:
///   P = [[ I,              0,      0 ],     T = [[ X_A,  -(rho/beta) A^T B,  -(1/beta) A^T ],
///        [ (rho/beta)B^T A, I,     0 ],          [ 0,    X_B,                -(1/beta) B^T ],
///        [ -rho A,         -rho B, I ]],         [ 0,    0,                   I            ]]
/// with X_A = I - (1/beta)(H + rho A^T A) and X_B = I - (1/beta)(G + rho B^T B).
struct GadmmLinearization {
  Eigen::MatrixXd P, T;
};

GadmmLinearization gadmm_linearization(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                       const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       double rho, double beta);

Eigen::MatrixXd gadmm_iteration_matrix(const GadmmLinearization& lin);

/// Alternate assembly flipping the sign of the (rho/beta) B^T B term in the
/// y block (X_B' = I - (1/beta) G + (rho/beta) B^T B). Hand derivations
/// disagree on this sign; the finite-difference Jacobian of the actual update
/// map settles it in favor of the minus form used above. Kept so the
/// discrepancy stays measurable instead of silently patched.
Eigen::MatrixXd gadmm_transition_sign_variant(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                              const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                              double rho, double beta);

/// The (N1+N2)-square reduced pencil whose determinant tracks det(T - mu P)
/// up to the factor (1 - mu)^(N1+N2-M):
///   U11 = (1-mu)^2 I + (mu-1)(1/beta) H + (2mu-1)(rho/beta) A^T A
///   U12 = (2mu-1)(rho/beta) A^T B
///   U21 = mu^2 (rho/beta) B^T A
///   U22 = (1-mu)^2 I + (mu-1)(1/beta) G + (2mu-1)(rho/beta) B^T B
/// At mu = 1 it collapses to (rho/beta) [A B]^T [A B], which is singular
/// whenever the stacked constraint matrix is column-rank deficient.
Eigen::MatrixXd u_matrix(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                         const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rho,
                         double beta, double mu);

/// Symmetric matrix sharing the spectrum of u_matrix at mu = 1 + delta: the
/// diagonal similarity diag(I, ((delta+1)/sqrt(2 delta+1)) I) balances the
/// off-diagonal blocks to (delta+1) sqrt(2 delta+1) (rho/beta) A^T B and its
/// transpose. Proves the spectrum real for delta > -1/2.
Eigen::MatrixXd symmetric_similarity(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                     const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                     double rho, double beta, double delta);

/// sigma_max of the bordered matrix [[I, (rho/beta) A^T B],
/// [(rho/beta) B^T A, (rho/beta)^2 B^T A A^T B + I]] that bounds the
/// perturbation part of u_matrix(1 + delta) = delta (F(delta) + E(delta)).
double gadmm_border_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rho,
                         double beta);

/// The probe sigma / (2 d beta (2 S - 1)) with S = N1 + N2, at which the
/// smallest eigenvalue of u_matrix(1 + delta) is provably at most
/// -sigma^2 / (4 beta^2 (2 S - 1)) at a strict saddle of curvature sigma.
double gadmm_probe_delta(double sigma, double d, double beta, Eigen::Index s);

/// Finds delta* > 0 with u_matrix(1 + delta*) singular by bisecting the
/// smallest eigenvalue of symmetric_similarity between the probe (negative
/// side) and a grown upper bracket (positive side); |min eig| <= 1e-9 at the
/// returned delta*. The eigensolve_gap field reports the distance from
/// 1 + delta* to the nearest eigenvalue of the assembled iteration matrix.
UnstableMode unstable_eigenvalue_gadmm(const Eigen::MatrixXd& H, const Eigen::MatrixXd& G,
                                       const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       double rho, double beta, double sigma);

/// Central finite-difference Jacobian of an R^n -> R^n map, step
/// 1e-6 * (1 + ||z||).
Eigen::MatrixXd numeric_step_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                                      const Eigen::VectorXd& z0);

/// Optimal matching distance between the spectra of two equal-size matrices:
/// the minimum over pairings of the largest |eigenvalue difference|. The
/// minimax assignment is solved exactly by binary search over the pairwise
/// costs with a bipartite perfect-matching feasibility test.
double optimal_matching_distance(const Eigen::MatrixXd& F, const Eigen::MatrixXd& F_tilde);

}  // namespace gpda
