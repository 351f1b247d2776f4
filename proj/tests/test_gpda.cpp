#include "doctest.h"

#include <stdexcept>
#include <string>

#include "gpda/gpda.hpp"
#include "gpda/instances.hpp"
#include "gpda/linalg.hpp"
#include "gpda/rng.hpp"

using namespace gpda;

namespace {

// Half squared norm in R^2 constrained to x1 = 0: small enough to step by hand.
ConstrainedProblem tiny_problem() {
  Eigen::MatrixXd a(1, 2);
  a << 1, 0;
  return ConstrainedProblem(
      quadratic_objective(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)), a,
      Eigen::VectorXd::Zero(1));
}

}  // namespace

TEST_CASE("one step matches the hand calculation") {
  const ConstrainedProblem p = tiny_problem();
  GpdaParams params;
  params.rho = 1.0;
  params.beta = 4.0;

  PrimalDualState s;
  s.x = Eigen::VectorXd::Ones(2);
  s.x_prev = s.x;
  s.lambda = Eigen::VectorXd::Zero(1);

  // x+ = (1,1) - (1/4)((1,1) + (1,0)) = (0.5, 0.75); lambda+ = 0 + 0.5.
  const PrimalDualState next = gpda_step(p, s, params);
  CHECK(next.x(0) == doctest::Approx(0.5));
  CHECK(next.x(1) == doctest::Approx(0.75));
  CHECK(next.lambda(0) == doctest::Approx(0.5));
  CHECK(next.x_prev(0) == 1.0);
  CHECK(next.iter == 1);
  CHECK(s.x(0) == 1.0);  // input state untouched
}

TEST_CASE("the dual step sees the fresh primal point") {
  const ConstrainedProblem p = tiny_problem();
  GpdaParams params;
  params.rho = 2.0;
  params.beta = 8.0;
  PrimalDualState s;
  s.x = Eigen::VectorXd::Ones(2);
  s.x_prev = s.x;
  s.lambda = Eigen::VectorXd::Ones(1);
  const PrimalDualState next = gpda_step(p, s, params);
  // x1+ = 1 - (1/8)(1 + 1 + 2) = 0.5, so lambda+ = 1 + 2*0.5 = 2 (stale x gives 3).
  CHECK(next.lambda(0) == doctest::Approx(2.0));
}

TEST_CASE("condition slacks on the tiny instance") {
  const ConstrainedProblem p = tiny_problem();
  GpdaParams params;
  params.rho = 1.0;
  params.beta = 4.0;
  params.c = 0.0;
  const GpdaConditions cond = verify_conditions(p, params);
  // C1 = diag(beta - rho, beta).
  CHECK(cond.c1_min_eig == doctest::Approx(3.0));
  CHECK_FALSE(cond.all_hold());  // c = 0 kills the second condition

  // At this beta no c clears condition 3 (it needs beta/2 > c L + 2 L^2/(rho s)).
  params.c = 17.0;
  const GpdaConditions cond2 = verify_conditions(p, params);
  CHECK(cond2.c1_min_eig == doctest::Approx(3.0));
  CHECK(cond2.c2_min_eig > 0);  // c > 4 lambda_max(C1)/(rho s) = 16
  CHECK(cond2.c3_value < 0);
}

TEST_CASE("automatic parameters on the benchmark instance") {
  const ConstrainedProblem p = two_var_saddle_instance();
  const GpdaParams params = select_parameters(p);
  // L = 5.25, s = 2 (Gram spectrum {0, 2}), so rho = 16 L / s = 42 and the
  // first margin 1.05 already verifies: beta = 1.05 (42*2 + 5.25) = 93.7125.
  CHECK(params.rho == doctest::Approx(42.0));
  CHECK(params.beta == doctest::Approx(93.7125));
  CHECK(verify_conditions(p, params).all_hold());

  // c sits midway between 4 lambda_max(C1)/(rho s) and (beta/2 - 2L^2/(rho s))/L.
  const double lower = 4.0 * 93.7125 / (42.0 * 2.0);
  const double upper = (93.7125 / 2.0 - 2.0 * 5.25 * 5.25 / (42.0 * 2.0)) / 5.25;
  CHECK(params.c == doctest::Approx(0.5 * (lower + upper)));
}

TEST_CASE("automatic parameters on a consensus instance") {
  std::vector<ObjectiveOracle> locals;
  locals.push_back(
      quadratic_objective(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1)));
  locals.push_back(zero_objective(1));
  locals.push_back(zero_objective(1));
  const ConstrainedProblem p = network_consensus_problem(path_graph(3), locals);
  // L = 1 and the path Laplacian's smallest positive eigenvalue is 1.
  const GpdaParams params = select_parameters(p);
  CHECK(params.rho == doctest::Approx(16.0));
  CHECK(verify_conditions(p, params).all_hold());
}

TEST_CASE("select_parameters rejects degenerate inputs") {
  Eigen::MatrixXd a(1, 2);
  a << 1, 0;
  const ConstrainedProblem no_curvature(zero_objective(2), a, Eigen::VectorXd::Zero(1));
  CHECK_THROWS_AS(select_parameters(no_curvature), std::invalid_argument);
}

TEST_CASE("descent threshold") {
  const ConstrainedProblem p = two_var_saddle_instance();
  // 1.05 * (rho * 2 + 5.25) at rho = 10.
  CHECK(descent_beta(p, 10.0) == doctest::Approx(1.05 * 25.25));
}

TEST_CASE("potential value by hand") {
  const ConstrainedProblem p = tiny_problem();
  GpdaParams params;
  params.rho = 1.0;
  params.beta = 4.0;
  params.c = 1.0;
  Eigen::VectorXd x(2), x_prev(2), lambda(1);
  x << 0.5, 0.75;
  x_prev << 1, 1;
  lambda << 0.5;
  // AL = 0.40625 + 0.25 + 0.125; penalty 0.125; C1-weighted diff 0.5;
  // (2 L^2/(rho s) + c L/2)||dx||^2 = 2.5 * 0.3125.
  CHECK(gpda_potential(p, params, x, x_prev, lambda) == doctest::Approx(2.1875));
}

TEST_CASE("potential decreases monotonically under verified parameters") {
  const ConstrainedProblem p = two_var_saddle_instance();
  const GpdaParams params = select_parameters(p);
  Rng rng(4);
  const GpdaResult result =
      run_gpda(p, 0.3 * rng.gaussian_vector(2), Eigen::VectorXd::Zero(1), params);
  CHECK(result.status == SolveStatus::converged);
  double worst = 0.0;
  for (std::size_t r = 2; r < result.trajectory.rows.size(); ++r)
    worst = std::max(worst,
                     result.trajectory.rows[r].potential - result.trajectory.rows[r - 1].potential);
  CHECK(worst <= 1e-9);
}

TEST_CASE("solver run shape and statuses") {
  const ConstrainedProblem p = two_var_saddle_instance();
  GpdaParams params;
  params.rho = 10.0;
  params.beta = 200.0;
  Eigen::VectorXd x0(2);
  x0 << 0.1, -0.2;
  const GpdaResult result = run_gpda(p, x0, Eigen::VectorXd::Zero(1), params);
  CHECK(result.status == SolveStatus::converged);
  CHECK(result.trajectory.rows.size() == static_cast<std::size_t>(result.state.iter) + 1);
  CHECK(result.trajectory.rows[0].x(0) == doctest::Approx(0.1));
  CHECK(result.trajectory.rows.back().stat_residual_inf <= 1e-6);
  CHECK(result.trajectory.rows.back().feas_residual_inf <= 1e-6);
  // The benchmark's minima sit near (+-1.617, +-0.617) with negative value.
  CHECK(result.trajectory.rows.back().objective < 0.0);

  SolveOptions opts;
  opts.max_iters = 3;
  const GpdaResult limited = run_gpda(p, x0, Eigen::VectorXd::Zero(1), params, opts);
  CHECK(limited.status == SolveStatus::iteration_limit);
  CHECK(limited.trajectory.rows.size() == 4);

  SolveOptions quiet;
  quiet.record_trajectory = false;
  const GpdaResult bare = run_gpda(p, x0, Eigen::VectorXd::Zero(1), params, quiet);
  CHECK(bare.status == SolveStatus::converged);
  CHECK(bare.trajectory.rows.empty());
}

TEST_CASE("divergence is detected and the final row kept") {
  const ConstrainedProblem p = two_var_saddle_instance();
  GpdaParams params;
  params.rho = 10.0;
  params.beta = 0.05;  // far below the descent threshold
  Eigen::VectorXd x0(2);
  x0 << 1, 1;
  const GpdaResult result = run_gpda(p, x0, Eigen::VectorXd::Zero(1), params);
  CHECK(result.status == SolveStatus::diverged);
  CHECK(result.trajectory.rows.size() >= 2);
  CHECK(result.trajectory.rows.back().iter == result.state.iter);

  CHECK(std::string(to_string(SolveStatus::diverged)) == "diverged");
  CHECK(std::string(to_string(SolveStatus::converged)) == "converged");
  CHECK(std::string(to_string(SolveStatus::iteration_limit)) == "iteration_limit");
}

TEST_CASE("a feasible start on the constraint stays feasible for zero objective") {
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  Eigen::VectorXd b(1);
  b << 0;
  const ConstrainedProblem p(
      quadratic_objective(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2)), a, b);
  GpdaParams params;
  params.rho = 1.0;
  params.beta = 10.0;
  Eigen::VectorXd x0(2);
  x0 << 2, 2;
  const GpdaResult result = run_gpda(p, x0, Eigen::VectorXd::Zero(1), params);
  CHECK(result.status == SolveStatus::converged);
  CHECK(result.state.x.cwiseAbs().maxCoeff() < 1e-5);
}
