#include "doctest.h"

#include <stdexcept>

#include "gpda/instances.hpp"
#include "gpda/model.hpp"

using namespace gpda;

TEST_CASE("quadratic objective evaluators") {
  Eigen::MatrixXd h(2, 2);
  h << 2, 0, 0, 4;
  Eigen::VectorXd q(2);
  q << 1, -1;
  const ObjectiveOracle f = quadratic_objective(h, q);
  Eigen::VectorXd x(2);
  x << 1, 2;
  CHECK(f.value(x) == doctest::Approx(8.0));  // 0.5*(2 + 16) + (1 - 2)
  const Eigen::VectorXd g = f.gradient(x);
  CHECK(g(0) == doctest::Approx(3.0));
  CHECK(g(1) == doctest::Approx(7.0));
  CHECK((f.hessian(x) - h).cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.grad_lipschitz == doctest::Approx(4.0));
  CHECK(f.hess_lipschitz == 0.0);
}

TEST_CASE("separable objective sums parts coordinate-wise") {
  Eigen::MatrixXd one(1, 1);
  one << 1;
  Eigen::MatrixXd three(1, 1);
  three << 3;
  std::vector<ObjectiveOracle> parts;
  parts.push_back(quadratic_objective(one, Eigen::VectorXd::Zero(1)));
  parts.push_back(quadratic_objective(three, Eigen::VectorXd::Zero(1)));
  const ObjectiveOracle f = separable_objective(std::move(parts));
  CHECK(f.dim == 2);
  Eigen::VectorXd x(2);
  x << 2, 1;
  CHECK(f.value(x) == doctest::Approx(0.5 * 4 + 0.5 * 3));
  const Eigen::VectorXd g = f.gradient(x);
  CHECK(g(0) == doctest::Approx(2.0));
  CHECK(g(1) == doctest::Approx(3.0));
  const Eigen::MatrixXd hess = f.hessian(x);
  CHECK(hess(0, 0) == doctest::Approx(1.0));
  CHECK(hess(1, 1) == doctest::Approx(3.0));
  CHECK(hess(0, 1) == 0.0);
  CHECK(f.grad_lipschitz == doctest::Approx(4.0));
}

TEST_CASE("constrained problem rejects infeasible systems") {
  const ObjectiveOracle f = zero_objective(1);
  Eigen::MatrixXd a(2, 1);
  a << 1, 1;
  Eigen::VectorXd b(2);
  b << 0, 1;  // x = 0 and x = 1 simultaneously
  CHECK_THROWS_AS(ConstrainedProblem(f, a, b), std::invalid_argument);

  Eigen::VectorXd ok(2);
  ok << 1, 1;
  CHECK_NOTHROW(ConstrainedProblem(f, a, ok));

  CHECK_THROWS_AS(ConstrainedProblem(f, Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Zero(1)),
                  std::invalid_argument);  // A has more columns than f.dim
}

TEST_CASE("augmented Lagrangian on the two-variable quartic") {
  const ConstrainedProblem p = two_var_saddle_instance();
  Eigen::VectorXd x(2);
  x << 2, 0;
  Eigen::VectorXd lambda(1);
  lambda << 3;
  // f = -2*2*0 + (16)/4 = 4, residual = 2 - 1 = 1, AL = 4 + 3 + 10/2.
  CHECK(augmented_lagrangian(p, x, lambda, 10.0) == doctest::Approx(12.0));
  CHECK(constraint_residual(p, x)(0) == doctest::Approx(1.0));
}

TEST_CASE("two-block augmented Lagrangian") {
  Eigen::MatrixXd one(1, 1);
  one << 1;
  const ObjectiveOracle f = quadratic_objective(one, Eigen::VectorXd::Zero(1));
  const ObjectiveOracle g = quadratic_objective(one, Eigen::VectorXd::Zero(1));
  Eigen::MatrixXd a(1, 1), b_mat(1, 1);
  a << 1;
  b_mat << -1;
  const TwoBlockProblem p(f, g, a, b_mat, Eigen::VectorXd::Zero(1));
  Eigen::VectorXd x(1), y(1), lambda(1);
  x << 2;
  y << 1;
  lambda << 0.5;
  // 0.5*4 + 0.5*1 + 0.5*(2-1) + (rho/2)*1 with rho = 4.
  CHECK(augmented_lagrangian(p, x, y, lambda, 4.0) == doctest::Approx(5.0));
  CHECK(constraint_residual(p, x, y)(0) == doctest::Approx(1.0));
}

TEST_CASE("finite differences confirm the quartic derivatives") {
  Eigen::MatrixXd q(2, 2);
  q << 0, -1, -1, 0;
  const ObjectiveOracle f = quartic_objective(q, 1.05);
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd p1(2), p2(2);
  p1 << 0.3, -0.2;
  p2 << -0.7, 0.5;
  points.push_back(p1);
  points.push_back(p2);
  const DerivativeCheck check = check_derivatives(f, points);
  CHECK(check.passed());
  CHECK(check.grad_error <= 1e-5);
  CHECK(check.hess_error <= 1e-4);
}

TEST_CASE("zero objective") {
  const ObjectiveOracle z = zero_objective(3);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(3, 2.0);
  CHECK(z.value(x) == 0.0);
  CHECK(z.gradient(x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.hessian(x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.grad_lipschitz == 0.0);
}
