#include "gpda/instances.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gpda/linalg.hpp"

namespace gpda {

ObjectiveOracle quartic_objective(const Eigen::MatrixXd& Q, double tau) {
  if (Q.rows() != Q.cols()) throw std::invalid_argument("quartic_objective: Q must be square");
  const double scale = Q.size() > 0 ? Q.cwiseAbs().maxCoeff() : 0.0;
  if (Q.size() > 0 && (Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("quartic_objective: Q must be symmetric");
  const SymmetricEigen eig = symmetric_eigen(Q);
  const double lambda_max = eig.values.size() > 0 ? eig.values(eig.values.size() - 1) : 0.0;
  if (tau < lambda_max)
    throw std::invalid_argument("quartic_objective: tau must be at least lambda_max(Q) = " +
                                std::to_string(lambda_max));

  ObjectiveOracle f;
  f.dim = Q.rows();
  f.value = [Q](const Eigen::VectorXd& x) {
    return x.dot(Q * x) + 0.25 * x.array().pow(4).sum();
  };
  f.gradient = [Q](const Eigen::VectorXd& x) {
    return (2.0 * Q * x + x.array().cube().matrix()).eval();
  };
  f.hessian = [Q](const Eigen::VectorXd& x) {
    Eigen::MatrixXd h = 2.0 * Q;
    h.diagonal() += 3.0 * x.array().square().matrix();
    return h;
  };
  f.grad_lipschitz = 5.0 * tau;
  f.hess_lipschitz = 6.0 * std::sqrt(tau);
  return f;
}

double default_quartic_tau(const Eigen::MatrixXd& Q) {
  return 1.05 * std::max(1.0, spectral_norm_symmetric(Q));
}

Eigen::MatrixXd random_indefinite_q(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_indefinite_q: n must be positive");
  Rng rng(seed);
  const Eigen::VectorXd d = rng.gaussian_vector(n);
  const Eigen::MatrixXd u = random_orthogonal(n, rng);
  return u * d.asDiagonal() * u.transpose();
}

ConstrainedProblem two_var_saddle_instance(double rhs, double tau) {
  Eigen::MatrixXd q(2, 2);
  q << 0.0, -1.0, -1.0, 0.0;
  Eigen::MatrixXd a(1, 2);
  a << 1.0, -1.0;
  Eigen::VectorXd b(1);
  b << rhs;
  return ConstrainedProblem(quartic_objective(q, tau), a, b);
}

ConstrainedProblem network_consensus_problem(const Graph& g,
                                             std::vector<ObjectiveOracle> locals,
                                             const ObjectiveOracle* shared) {
  if (!g.connected())
    throw std::invalid_argument(
        "network_consensus_problem: graph must be connected for consensus equivalence");
  if (static_cast<int>(locals.size()) != g.num_nodes)
    throw std::invalid_argument("network_consensus_problem: one local objective per vertex");
  const auto n = static_cast<Eigen::Index>(g.num_nodes);
  if (shared) {
    if (shared->dim != 1)
      throw std::invalid_argument("network_consensus_problem: shared objective must be scalar");
    // Fold shared(x_i)/n into every local so the builder below stays separable.
    for (auto& local : locals) {
      ObjectiveOracle inner = std::move(local);
      ObjectiveOracle sh = *shared;
      const double w = 1.0 / static_cast<double>(n);
      ObjectiveOracle mixed;
      mixed.dim = 1;
      mixed.value = [inner, sh, w](const Eigen::VectorXd& z) {
        return inner.value(z) + w * sh.value(z);
      };
      mixed.gradient = [inner, sh, w](const Eigen::VectorXd& z) {
        return (inner.gradient(z) + w * sh.gradient(z)).eval();
      };
      mixed.hessian = [inner, sh, w](const Eigen::VectorXd& z) {
        return (inner.hessian(z) + w * sh.hessian(z)).eval();
      };
      mixed.grad_lipschitz = inner.grad_lipschitz + w * sh.grad_lipschitz;
      mixed.hess_lipschitz = inner.hess_lipschitz + w * sh.hess_lipschitz;
      local = std::move(mixed);
    }
  }
  ObjectiveOracle f = separable_objective(std::move(locals));
  const Eigen::MatrixXd a = incidence_matrix(g);
  return ConstrainedProblem(std::move(f), a, Eigen::VectorXd::Zero(a.rows()));
}

TwoBlockProblem star_consensus_problem(std::vector<ObjectiveOracle> workers,
                                       ObjectiveOracle master) {
  const auto n = static_cast<Eigen::Index>(workers.size());
  if (n < 1) throw std::invalid_argument("star_consensus_problem: need at least one worker");
  if (master.dim != 1)
    throw std::invalid_argument("star_consensus_problem: master objective must be scalar");
  ObjectiveOracle f = separable_objective(std::move(workers));
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd b_block = -Eigen::MatrixXd::Ones(n, 1);
  return TwoBlockProblem(std::move(f), std::move(master), a, b_block,
                         Eigen::VectorXd::Zero(n));
}

}  // namespace gpda
