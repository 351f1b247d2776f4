#pragma once

#include "gpda/model.hpp"

namespace gpda {

/// Optimality hierarchy for the constrained problem: first-order stationarity
/// (vanishing projected gradient and feasibility), second-order stationarity
/// (Hessian PSD on the constraint null space), or a strict saddle (a null
/// direction of curvature at most -sigma).
enum class StationarityClass { not_ss1, ss2, strict_saddle, indeterminate };

const char* to_string(StationarityClass verdict);

/// Least-squares multiplier fit: lambda = argmin ||grad + A^T lambda||_2 with
/// the residuals of the resulting first-order system.
struct MultiplierFit {
  Eigen::VectorXd lambda;
  double stat_residual_inf = 0.0;
  double feas_residual_inf = 0.0;
};

MultiplierFit fit_multiplier(const ConstrainedProblem& p, const Eigen::VectorXd& x);

/// First-order residuals at a caller-supplied multiplier:
/// (||grad f(x) + A^T lambda||_inf, ||Ax - b||_inf).
std::pair<double, double> ss1_residual(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& lambda);

struct ClassifyOptions {
  double stat_tol = 1e-5;
  double feas_tol = 1e-5;
  /// Curvature slack; a nonpositive value selects 1e-8 * (1 + ||H||).
  double curvature_tol = -1.0;
};

struct Classification {
  StationarityClass verdict = StationarityClass::indeterminate;
  MultiplierFit first_order;
  /// Smallest eigenvalue of Y^T H Y on the null-space basis Y; +infinity when
  /// the null space is trivial (the second-order condition is vacuous).
  double min_projected_curvature = 0.0;
  /// Escape curvature sigma = max(0, -min_projected_curvature): the witness
  /// below satisfies w^T H w <= -sigma with ||w|| = 1 and Aw = 0.
  double sigma = 0.0;
  Eigen::VectorXd witness;  ///< empty unless verdict == strict_saddle
  Eigen::Index null_dim = 0;
  /// Penalty weight with H + gamma A^T A positive definite, when the sweep
  /// certificate succeeds (only attempted for strictly positive curvature).
  double gamma_certificate = -1.0;
};

/// Classifies x: fits the multiplier, checks first-order residuals against
/// the tolerances, then examines the projected Hessian on null(A).
Classification classify_stationary_point(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                                         const ClassifyOptions& opts = {});

/// Two-block variant: the stacked Hessian blkdiag(Hf, Hg) is examined on the
/// null space of [A B], multipliers fit against the stacked gradient.
Classification classify_stationary_point(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y,
                                         const ClassifyOptions& opts = {});

/// Geometric sweep of gamma over [1e-4, gamma_max] testing H + gamma A^T A
/// for positive definiteness. Success for some gamma is equivalent to strict
/// positive curvature of H on null(A) (with a large enough gamma_max); at a
/// strict saddle every gamma fails, since null directions keep their
/// curvature: y^T (H + gamma A^T A) y = y^T H y.
struct PenalizedCertificate {
  bool found = false;
  double gamma = 0.0;     ///< first passing sweep value
  double min_eig = 0.0;   ///< min eigenvalue at that gamma
  double best_min_eig = 0.0;  ///< largest min eigenvalue over the sweep
};

PenalizedCertificate penalized_hessian_certificate(const Eigen::MatrixXd& H,
                                                   const Eigen::MatrixXd& A,
                                                   double gamma_max = 1e6, int steps = 40);

}  // namespace gpda
