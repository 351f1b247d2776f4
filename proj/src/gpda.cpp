#include "gpda/gpda.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gpda/linalg.hpp"

namespace gpda {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

double smallest_nonzero_or_zero(const Eigen::MatrixXd& gram) {
  // No constraints (or a numerically zero Gram matrix) removes the dual-bound
  // term from the potential; signal that with a zero sentinel.
  if (gram.size() == 0) return 0.0;
  try {
    return smallest_nonzero_eigenvalue(gram);
  } catch (const std::invalid_argument&) {
    return 0.0;
  }
}

struct PotentialCtx {
  double rho = 0, beta = 0, c = 0, grad_lipschitz = 0;
  double dual_coeff = 0;  // 2 L^2 / (rho s), or 0 without constraints

  double eval(const ConstrainedProblem& p, const Eigen::VectorXd& x,
              const Eigen::VectorXd& x_prev, const Eigen::VectorXd& lambda) const {
    const Eigen::VectorXd r = constraint_residual(p, x);
    const Eigen::VectorXd dx = x - x_prev;
    const double al = p.f.value(x) + lambda.dot(r) + 0.5 * rho * r.squaredNorm();
    // ||dx||^2 weighted by C1 = beta I - rho A^T A, expanded to avoid forming C1.
    const double c1_term = beta * dx.squaredNorm() - rho * (p.A * dx).squaredNorm();
    return al + 0.5 * c * rho * r.squaredNorm() + 0.5 * c * c1_term +
           (dual_coeff + 0.5 * c * grad_lipschitz) * dx.squaredNorm();
  }
};

PotentialCtx make_potential_ctx(const ConstrainedProblem& p, const GpdaParams& params) {
  PotentialCtx ctx;
  ctx.rho = params.rho;
  ctx.beta = params.beta;
  ctx.c = params.c;
  ctx.grad_lipschitz = p.f.grad_lipschitz;
  const Eigen::MatrixXd gram = p.A.transpose() * p.A;
  const double s = smallest_nonzero_or_zero(gram);
  ctx.dual_coeff = s > 0 ? 2.0 * ctx.grad_lipschitz * ctx.grad_lipschitz / (ctx.rho * s) : 0.0;
  return ctx;
}

double stationarity_residual(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& lambda) {
  const Eigen::VectorXd g = p.f.gradient(x) + p.A.transpose() * lambda;
  return g.size() > 0 ? g.cwiseAbs().maxCoeff() : 0.0;
}

double feasibility_residual(const ConstrainedProblem& p, const Eigen::VectorXd& x) {
  const Eigen::VectorXd r = constraint_residual(p, x);
  return r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

GpdaConditions verify_conditions(const ConstrainedProblem& p, const GpdaParams& params) {
  if (params.rho <= 0 || params.beta <= 0)
    throw std::invalid_argument("verify_conditions: rho and beta must be positive");
  const Eigen::MatrixXd gram = p.A.transpose() * p.A;
  const double s = smallest_nonzero_eigenvalue(gram);
  const double L = p.f.grad_lipschitz;
  const Eigen::Index n = p.f.dim;

  const Eigen::MatrixXd c1 =
      params.beta * Eigen::MatrixXd::Identity(n, n) - params.rho * gram;
  GpdaConditions out;
  out.c1_min_eig = symmetric_eigen(c1).values(0);
  const Eigen::MatrixXd coupling =
      0.5 * params.c * c1 - (2.0 / (params.rho * s)) * c1.transpose() * c1;
  out.c2_min_eig = symmetric_eigen(0.5 * (coupling + coupling.transpose())).values(0);
  out.c3_value = 0.5 * params.beta - params.c * L - 2.0 * L * L / (params.rho * s);
  return out;
}

GpdaParams select_parameters(const ConstrainedProblem& p) {
  const double L = p.f.grad_lipschitz;
  if (L <= 0)
    throw std::invalid_argument("select_parameters: gradient Lipschitz constant must be positive");
  const Eigen::MatrixXd gram = p.A.transpose() * p.A;
  const double s = smallest_nonzero_eigenvalue(gram);  // throws when A^T A ~ 0
  const double gram_norm = spectral_norm_symmetric(gram);

  GpdaParams params;
  params.rho = 16.0 * L / s;

  double margin = 1.05;
  GpdaConditions last;
  for (int attempt = 0; attempt <= 20; ++attempt, margin *= 2.0) {
    params.beta = margin * (params.rho * gram_norm + L);
    // Feasible c interval: condition 2 needs c above 4 lambda_max(C1)/(rho s),
    // condition 3 caps it at (beta/2 - 2L^2/(rho s))/L. Take the midpoint.
    const Eigen::MatrixXd c1 =
        params.beta * Eigen::MatrixXd::Identity(p.f.dim, p.f.dim) - params.rho * gram;
    const double c1_max = symmetric_eigen(c1).values(p.f.dim - 1);
    const double c_lo = 4.0 * c1_max / (params.rho * s);
    const double c_hi = (0.5 * params.beta - 2.0 * L * L / (params.rho * s)) / L;
    if (c_lo < c_hi) {
      params.c = 0.5 * (c_lo + c_hi);
      last = verify_conditions(p, params);
      if (last.all_hold()) return params;
    } else {
      params.c = c_lo;
      last = verify_conditions(p, params);
    }
  }
  std::string which = last.c1_min_eig <= 0   ? "beta I - rho A^T A not positive definite"
                      : last.c2_min_eig <= 0 ? "coupling matrix condition not positive definite"
                                             : "descent margin beta/2 - cL - 2L^2/(rho s) <= 0";
  throw std::runtime_error("select_parameters: bounded margin search failed; first violated: " +
                           which);
}

double descent_beta(const ConstrainedProblem& p, double rho) {
  if (rho <= 0) throw std::invalid_argument("descent_beta: rho must be positive");
  const Eigen::MatrixXd gram = p.A.transpose() * p.A;
  const double gram_norm = gram.size() > 0 ? spectral_norm_symmetric(gram) : 0.0;
  return 1.05 * (rho * gram_norm + p.f.grad_lipschitz);
}

PrimalDualState gpda_step(const ConstrainedProblem& p, const PrimalDualState& s,
                          const GpdaParams& params) {
  if (s.x.size() != p.f.dim || s.lambda.size() != p.A.rows())
    throw std::invalid_argument("gpda_step: state dimension mismatch");
  PrimalDualState next;
  const Eigen::VectorXd r = p.A * s.x - p.b;
  next.x = s.x - (1.0 / params.beta) *
                     (p.f.gradient(s.x) + p.A.transpose() * s.lambda +
                      params.rho * (p.A.transpose() * r));
  next.lambda = s.lambda + params.rho * (p.A * next.x - p.b);
  next.x_prev = s.x;
  next.iter = s.iter + 1;
  return next;
}

double gpda_potential(const ConstrainedProblem& p, const GpdaParams& params,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& x_prev,
                      const Eigen::VectorXd& lambda) {
  return make_potential_ctx(p, params).eval(p, x, x_prev, lambda);
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

GpdaResult run_gpda(const ConstrainedProblem& p, Eigen::VectorXd x0, Eigen::VectorXd lambda0,
                    const GpdaParams& params, const SolveOptions& opts) {
  if (x0.size() != p.f.dim || lambda0.size() != p.A.rows())
    throw std::invalid_argument("run_gpda: initial point dimension mismatch");
  if (!all_finite(x0) || !all_finite(lambda0))
    throw std::invalid_argument("run_gpda: initial point must be finite");

  const PotentialCtx potential = make_potential_ctx(p, params);
  GpdaResult result;
  result.state = {x0, x0, lambda0, 0};
  result.trajectory.dim = p.f.dim;

  auto record = [&](const PrimalDualState& s) {
    if (!opts.record_trajectory) return;
    TrajectoryRow row;
    row.iter = s.iter;
    row.objective = p.f.value(s.x);
    row.aug_lagrangian = augmented_lagrangian(p, s.x, s.lambda, params.rho);
    row.potential = potential.eval(p, s.x, s.x_prev, s.lambda);
    row.stat_residual_inf = stationarity_residual(p, s.x, s.lambda);
    row.feas_residual_inf = feasibility_residual(p, s.x);
    row.x = s.x;
    result.trajectory.rows.push_back(std::move(row));
  };

  auto converged = [&](const PrimalDualState& s) {
    return stationarity_residual(p, s.x, s.lambda) <= opts.stat_tol &&
           feasibility_residual(p, s.x) <= opts.feas_tol;
  };

  record(result.state);
  if (converged(result.state)) {
    result.status = SolveStatus::converged;
    return result;
  }
  for (int r = 1; r <= opts.max_iters; ++r) {
    result.state = gpda_step(p, result.state, params);
    record(result.state);
    if (!all_finite(result.state.x) || !all_finite(result.state.lambda) ||
        result.state.x.cwiseAbs().maxCoeff() > opts.divergence_norm) {
      result.status = SolveStatus::diverged;
      return result;
    }
    if (converged(result.state)) {
      result.status = SolveStatus::converged;
      return result;
    }
  }
  result.status = SolveStatus::iteration_limit;
  return result;
}

}  // namespace gpda
