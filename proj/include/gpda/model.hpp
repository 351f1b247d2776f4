#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace gpda {

/// Smooth objective with value/gradient/Hessian evaluators and the two
/// Lipschitz constants the step-size rules consume: grad_lipschitz bounds
/// ||grad f(x) - grad f(y)|| / ||x - y|| and hess_lipschitz does the same for
/// the Hessian over the region the oracle is built for.
struct ObjectiveOracle {
  Eigen::Index dim = 0;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
  double grad_lipschitz = 0.0;
  double hess_lipschitz = 0.0;
};

ObjectiveOracle zero_objective(Eigen::Index dim);

/// f(x) = 0.5 x^T H x + q^T x, H symmetric.
ObjectiveOracle quadratic_objective(const Eigen::MatrixXd& H, const Eigen::VectorXd& q);

/// Separable sum f(x) = sum_i parts[i](x_i) of scalar objectives.
/// Lipschitz constants are propagated conservatively as the sums of the
/// parts' constants.
ObjectiveOracle separable_objective(std::vector<ObjectiveOracle> parts);

/// min f(x) subject to Ax = b. Construction checks shapes and that the
/// feasible set is nonempty: the least-squares residual of Ax = b must not
/// exceed 1e-8 * (1 + ||b||), otherwise std::invalid_argument.
struct ConstrainedProblem {
  ObjectiveOracle f;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;

  ConstrainedProblem(ObjectiveOracle f_in, Eigen::MatrixXd A_in, Eigen::VectorXd b_in);
};

/// min f(x) + g(y) subject to Ax + By = b.
struct TwoBlockProblem {
  ObjectiveOracle f;
  ObjectiveOracle g;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::VectorXd b;

  TwoBlockProblem(ObjectiveOracle f_in, ObjectiveOracle g_in, Eigen::MatrixXd A_in,
                  Eigen::MatrixXd B_in, Eigen::VectorXd b_in);
};

/// Iterate pair for the single-block iteration; keeping the previous primal
/// point makes the difference vectors of the potential function computable.
struct PrimalDualState {
  Eigen::VectorXd x;
  Eigen::VectorXd x_prev;
  Eigen::VectorXd lambda;
  int iter = 0;
};

struct TwoBlockState {
  Eigen::VectorXd x, x_prev;
  Eigen::VectorXd y, y_prev;
  Eigen::VectorXd lambda, lambda_prev;
  int iter = 0;
};

Eigen::VectorXd constraint_residual(const ConstrainedProblem& p, const Eigen::VectorXd& x);
Eigen::VectorXd constraint_residual(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y);

/// f(x) + <lambda, Ax - b> + (rho/2) ||Ax - b||^2.
double augmented_lagrangian(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& lambda, double rho);

/// f(x) + g(y) + <lambda, Ax + By - b> + (rho/2) ||Ax + By - b||^2.
double augmented_lagrangian(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& lambda, double rho);

/// Central finite-difference conformance check: gradient against value and
/// Hessian against gradient at the supplied points, step 1e-5 * (1 + ||x||),
/// relative errors measured against 1 + the larger norm.
struct DerivativeCheck {
  double grad_error = 0.0;
  double hess_error = 0.0;
  bool passed(double grad_tol = 1e-5, double hess_tol = 1e-4) const {
    return grad_error <= grad_tol && hess_error <= hess_tol;
  }
};

DerivativeCheck check_derivatives(const ObjectiveOracle& f,
                                  const std::vector<Eigen::VectorXd>& points);

}  // namespace gpda
