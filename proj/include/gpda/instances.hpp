#pragma once

#include <cstdint>
#include <vector>

#include "gpda/graph.hpp"
#include "gpda/model.hpp"
#include "gpda/rng.hpp"

namespace gpda {

/// Quartic benchmark objective f(x) = x^T Q x + (1/4) sum_i x_i^4 with
/// gradient 2Qx + (x_i^3) and Hessian 2Q + 3 diag(x_i^2). On the ball
/// ||x||^2 <= tau the gradient is 5*tau-Lipschitz and the Hessian
/// 6*sqrt(tau)-Lipschitz, provided tau also dominates the spectral norm of Q;
/// default_quartic_tau picks such a tau. Throws when tau < lambda_max(Q).
ObjectiveOracle quartic_objective(const Eigen::MatrixXd& Q, double tau);

/// 1.05 * max(1, largest |eigenvalue| of Q).
double default_quartic_tau(const Eigen::MatrixXd& Q);

/// Q = U D U^T with iid standard-normal diagonal D and a random orthogonal U;
/// indefinite with probability one and reproducible from the seed.
Eigen::MatrixXd random_indefinite_q(Eigen::Index n, std::uint64_t seed);

/// The two-variable benchmark: quartic objective with Q = [[0,-1],[-1,0]]
/// under the single constraint x1 - x2 = rhs. The origin-centered variant
/// (rhs = 0) has a strict saddle exactly at the origin.
ConstrainedProblem two_var_saddle_instance(double rhs = 1.0, double tau = 1.05);

/// Network consensus over a connected graph: agent i owns the scalar x_i and
/// the local objective locals[i]; rows of the incidence matrix force x_u = x_v
/// across every edge (b = 0). An optional shared objective enters as
/// shared(x_i)/n summed over agents. Lipschitz constants are propagated as
/// conservative sums.
ConstrainedProblem network_consensus_problem(const Graph& g,
                                             std::vector<ObjectiveOracle> locals,
                                             const ObjectiveOracle* shared = nullptr);

/// Global consensus in two-block form: f(x) = sum_i workers[i](x_i),
/// g(y) = master(y), A = I_n, B = -ones(n, 1), b = 0. The stacked constraint
/// matrix [A B] has rank n, one short of full column rank.
TwoBlockProblem star_consensus_problem(std::vector<ObjectiveOracle> workers,
                                       ObjectiveOracle master);

}  // namespace gpda
