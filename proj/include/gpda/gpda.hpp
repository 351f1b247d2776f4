#pragma once

#include "gpda/model.hpp"
#include "gpda/trajectory.hpp"

namespace gpda {

struct GpdaParams {
  double rho = 1.0;   ///< penalty weight and dual step size
  double beta = 1.0;  ///< primal proximal weight (step size 1/beta)
  /// Potential-function weight. The iteration itself never reads c; it only
  /// enters the monotonicity certificate. select_parameters fills it, manual
  /// parameter choices may leave it at zero.
  double c = 0.0;
};

/// The three positivity conditions behind the descent argument, reported with
/// their numerical slack:
///   1. C1 = beta I - rho A^T A            is positive definite,
///   2. (c/2) C1 - (2/(rho s)) C1^T C1     is positive definite,
///   3. beta/2 - c L - 2 L^2/(rho s) > 0,
/// where s is the smallest nonzero eigenvalue of A^T A and L the gradient
/// Lipschitz constant.
struct GpdaConditions {
  double c1_min_eig = 0.0;
  double c2_min_eig = 0.0;
  double c3_value = 0.0;
  bool all_hold() const { return c1_min_eig > 0 && c2_min_eig > 0 && c3_value > 0; }
};

GpdaConditions verify_conditions(const ConstrainedProblem& p, const GpdaParams& params);

/// Automatic parameter choice: rho = 16 L / s, then beta = margin *
/// (rho ||A^T A|| + L) with the margin starting at 1.05 and doubling (at most
/// 20 times) until all three conditions verify; c is the midpoint of its
/// feasible interval at that beta. Throws std::runtime_error naming the first
/// violated condition when the bounded search fails, or std::invalid_argument
/// when L = 0 or A^T A vanishes.
GpdaParams select_parameters(const ConstrainedProblem& p);

/// The smoothness threshold 1.05 * (rho ||A^T A|| + L): above it the
/// augmented Lagrangian decreases along the primal step at fixed dual. Used
/// as the "auto" beta when rho is pinned by hand and the full condition
/// system has no solution.
double descent_beta(const ConstrainedProblem& p, double rho);

/// One iteration:
///   x+      = x - (1/beta)(grad f(x) + A^T lambda + rho A^T (Ax - b))
///   lambda+ = lambda + rho (A x+ - b)
PrimalDualState gpda_step(const ConstrainedProblem& p, const PrimalDualState& s,
                          const GpdaParams& params);

/// Lyapunov value of the iterate pair: the augmented Lagrangian plus
/// (c rho/2) ||Ax-b||^2, (c/2) ||x - x_prev||^2 weighted by C1, and
/// (2L^2/(rho s) + cL/2) ||x - x_prev||^2. Nonincreasing along the iteration
/// once verify_conditions passes.
double gpda_potential(const ConstrainedProblem& p, const GpdaParams& params,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& x_prev,
                      const Eigen::VectorXd& lambda);

enum class SolveStatus { converged, iteration_limit, diverged };

const char* to_string(SolveStatus status);

struct SolveOptions {
  int max_iters = 100000;
  double stat_tol = 1e-6;       ///< on ||grad f(x) + A^T lambda||_inf
  double feas_tol = 1e-6;       ///< on ||Ax - b||_inf
  double divergence_norm = 1e8; ///< inf-norm cap on the primal iterate
  bool record_trajectory = true;
};

struct GpdaResult {
  SolveStatus status = SolveStatus::iteration_limit;
  PrimalDualState state;
  Trajectory trajectory;  ///< row r is iterate r; row 0 is the initial state
};

GpdaResult run_gpda(const ConstrainedProblem& p, Eigen::VectorXd x0, Eigen::VectorXd lambda0,
                    const GpdaParams& params, const SolveOptions& opts = {});

}  // namespace gpda
