#include "doctest.h"

#include <stdexcept>

#include "gpda/gadmm.hpp"
#include "gpda/instances.hpp"

using namespace gpda;

namespace {

ObjectiveOracle scalar_quadratic() {
  return quadratic_objective(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1));
}

// Two scalar blocks tied by x + y = 0.
TwoBlockProblem tiny_two_block() {
  Eigen::MatrixXd a(1, 1), b(1, 1);
  a << 1;
  b << 1;
  return TwoBlockProblem(scalar_quadratic(), scalar_quadratic(), a, b,
                         Eigen::VectorXd::Zero(1));
}

// The geometry where the full condition system is solvable: a wide spectral
// gap between the two constraint blocks.
TwoBlockProblem gapped_problem() {
  Eigen::MatrixXd a = 0.3 * Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd b = 3.0 * Eigen::MatrixXd::Identity(2, 2);
  return TwoBlockProblem(
      quadratic_objective(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)),
      quadratic_objective(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)), a, b,
      Eigen::VectorXd::Zero(2));
}

}  // namespace

TEST_CASE("one alternating step by hand") {
  const TwoBlockProblem p = tiny_two_block();
  GadmmParams params;
  params.rho = 1.0;
  params.beta = 4.0;
  TwoBlockState s;
  s.x = Eigen::VectorXd::Ones(1);
  s.x_prev = s.x;
  s.y = Eigen::VectorXd::Ones(1);
  s.y_prev = s.y;
  s.lambda = Eigen::VectorXd::Zero(1);
  s.lambda_prev = s.lambda;

  const TwoBlockState next = gadmm_step(p, s, params);
  // x+ = 1 - (1/4)(1 + 0 + 2) = 0.25.
  CHECK(next.x(0) == doctest::Approx(0.25));
  // y+ = 1 - (1/4)(1 + 0 + (0.25 + 1)) = 0.4375; the stale x would give 0.25.
  CHECK(next.y(0) == doctest::Approx(0.4375));
  CHECK(next.lambda(0) == doctest::Approx(0.6875));
  CHECK(next.x_prev(0) == 1.0);
  CHECK(next.lambda_prev(0) == 0.0);
  CHECK(next.iter == 1);
}

TEST_CASE("automatic parameters exist for gapped geometry") {
  const TwoBlockProblem p = gapped_problem();
  const GadmmParams params = select_parameters_admm(p);
  const GadmmConditions cond = verify_conditions_admm(p, params);
  CHECK(cond.all_hold());
  CHECK(params.rho > 0);
  CHECK(params.beta > 0);
  CHECK(params.c > 0);
}

TEST_CASE("automatic parameters refuse consensus geometry") {
  std::vector<ObjectiveOracle> workers;
  for (int i = 0; i < 3; ++i)
    workers.push_back(quartic_objective(Eigen::MatrixXd::Identity(1, 1), 1.05));
  const TwoBlockProblem star =
      star_consensus_problem(workers, quartic_objective(Eigen::MatrixXd::Identity(1, 1), 1.05));
  CHECK_THROWS_AS(select_parameters_admm(star), std::runtime_error);
}

TEST_CASE("condition slacks respond to beta") {
  const TwoBlockProblem p = tiny_two_block();
  GadmmParams params;
  params.rho = 1.0;
  params.beta = 1.5;
  const GadmmConditions weak = verify_conditions_admm(p, params);
  // beta - (rho ||B^T B|| + L_g) = 1.5 - 2.
  CHECK(weak.y_invertibility == doctest::Approx(-0.5));
  CHECK_FALSE(weak.all_hold());

  params.beta = 10.0;
  const GadmmConditions strong = verify_conditions_admm(p, params);
  CHECK(strong.y_invertibility == doctest::Approx(8.0));
  CHECK(strong.x_invertibility == doctest::Approx(8.0));
  CHECK(strong.b_gram_margin == doctest::Approx(8.0));
}

TEST_CASE("potential decreases under verified parameters") {
  const TwoBlockProblem p = gapped_problem();
  const GadmmParams params = select_parameters_admm(p);
  Eigen::VectorXd x0(2), y0(2);
  x0 << 1.0, -0.5;
  y0 << 0.2, 0.4;
  const GadmmResult result = run_gadmm(p, x0, y0, Eigen::VectorXd::Zero(2), params);
  CHECK(result.status == SolveStatus::converged);
  double worst = 0.0;
  for (std::size_t r = 2; r < result.trajectory.rows.size(); ++r)
    worst = std::max(worst,
                     result.trajectory.rows[r].potential - result.trajectory.rows[r - 1].potential);
  CHECK(worst <= 1e-9);
}

TEST_CASE("run shape, defaults, and residual definitions") {
  const TwoBlockProblem p = gapped_problem();
  GadmmParams params;
  params.rho = 4.0;
  params.beta = 50.0;
  const GadmmResult result =
      run_gadmm(p, Eigen::VectorXd::Ones(2), Eigen::VectorXd(), Eigen::VectorXd(), params);
  CHECK(result.status == SolveStatus::converged);
  CHECK(result.trajectory.dim == 4);  // stacked (x, y)
  CHECK(result.trajectory.rows[0].x(0) == 1.0);
  CHECK(result.trajectory.rows[0].x(2) == 0.0);  // defaulted y0
  CHECK(result.trajectory.rows.size() == static_cast<std::size_t>(result.state.iter) + 1);

  // Both blocks converge to the origin here, the only stationary point.
  CHECK(result.state.x.cwiseAbs().maxCoeff() < 1e-4);
  CHECK(result.state.y.cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("divergence status for tiny beta") {
  const TwoBlockProblem p = gapped_problem();
  GadmmParams params;
  params.rho = 4.0;
  params.beta = 0.01;
  const GadmmResult result =
      run_gadmm(p, 10 * Eigen::VectorXd::Ones(2), Eigen::VectorXd(), Eigen::VectorXd(), params);
  CHECK(result.status == SolveStatus::diverged);
}
