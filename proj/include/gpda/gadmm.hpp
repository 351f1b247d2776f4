#pragma once

#include "gpda/gpda.hpp"
#include "gpda/model.hpp"
#include "gpda/trajectory.hpp"

namespace gpda {

struct GadmmParams {
  double rho = 1.0;
  double beta = 1.0;
  double c = 0.0;  ///< potential weight, diagnostics only (as in GpdaParams)
};

/// The condition system for the two-block descent argument, reported with
/// slacks. With s = smallest nonzero eigenvalue of [A B]^T [A B],
/// C1 = beta I - rho A^T A, C2 = beta I - rho B^T B, W = [[A^T A, A^T B],
/// [0, B^T B]] and C = beta I - rho W:
///   1. beta - (rho ||B^T B|| + L_g) > 0                       (invertibility, y block)
///   2. beta - (rho ||A^T A|| + L_f) > 0                       (invertibility, x block)
///   3. beta - 2 rho ||B^T B|| > 0                             (keeps C2 - rho B^T B definite)
///   4. (c/2) blkdiag(C1, C2 - rho B^T B) - (2/(rho s)) C^T C  positive definite
///   5. beta/2 - 2 c L_f - c rho ||A^T A|| - 2 L_f^2/(rho s) > 0
///   6. beta/2 - 2 c L_g - 2 L_g^2/(rho s) > 0
struct GadmmConditions {
  double y_invertibility = 0.0;
  double x_invertibility = 0.0;
  double b_gram_margin = 0.0;
  double coupling_min_eig = 0.0;
  double x_descent = 0.0;
  double y_descent = 0.0;
  bool all_hold() const {
    return y_invertibility > 0 && x_invertibility > 0 && b_gram_margin > 0 &&
           coupling_min_eig > 0 && x_descent > 0 && y_descent > 0;
  }
};

GadmmConditions verify_conditions_admm(const TwoBlockProblem& p, const GadmmParams& params);

/// Automatic (rho, beta, c) satisfying all six conditions. The system is
/// solvable only when the constraint geometry leaves enough of a spectral gap
/// (roughly s > 8 ||A^T A|| + 16 L_f / rho); global consensus never does, and
/// the search reports that with a descriptive std::runtime_error.
GadmmParams select_parameters_admm(const TwoBlockProblem& p);

/// One iteration; note the y update sees the fresh x:
///   x+      = x - (1/beta)(grad f(x) + A^T lambda + rho A^T (Ax + By - b))
///   y+      = y - (1/beta)(grad g(y) + B^T lambda + rho B^T (Ax+ + By - b))
///   lambda+ = lambda + rho (Ax+ + By+ - b)
TwoBlockState gadmm_step(const TwoBlockProblem& p, const TwoBlockState& s,
                         const GadmmParams& params);

/// Composite Lyapunov value: the augmented Lagrangian plus
/// (c/rho) ||lambda - lambda_prev||^2, the C3/C4-weighted squared primal
/// differences (C3 = C1 + L_f I, C4 = C2 + L_g I, weight c), and the
/// 2 L^2/(rho s)-weighted squared differences. Nonincreasing once
/// verify_conditions_admm passes.
double gadmm_potential(const TwoBlockProblem& p, const GadmmParams& params,
                       const TwoBlockState& s);

struct GadmmResult {
  SolveStatus status = SolveStatus::iteration_limit;
  TwoBlockState state;
  Trajectory trajectory;  ///< x column carries the stacked (x, y)
};

/// Stationarity residual max(||grad f + A^T lambda||_inf, ||grad g + B^T lambda||_inf),
/// feasibility ||Ax + By - b||_inf; y0 and lambda0 default to zero when empty.
GadmmResult run_gadmm(const TwoBlockProblem& p, Eigen::VectorXd x0, Eigen::VectorXd y0,
                      Eigen::VectorXd lambda0, const GadmmParams& params,
                      const SolveOptions& opts = {});

}  // namespace gpda
