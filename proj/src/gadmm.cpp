#include "gpda/gadmm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gpda/linalg.hpp"

namespace gpda {

namespace {

struct Grams {
  Eigen::MatrixXd ata, btb, atb;
  double ata_norm = 0, btb_norm = 0;
  double s = 0;  // smallest nonzero eigenvalue of [A B]^T [A B]
};

Grams make_grams(const TwoBlockProblem& p) {
  Grams g;
  g.ata = p.A.transpose() * p.A;
  g.btb = p.B.transpose() * p.B;
  g.atb = p.A.transpose() * p.B;
  g.ata_norm = g.ata.size() > 0 ? spectral_norm_symmetric(g.ata) : 0.0;
  g.btb_norm = g.btb.size() > 0 ? spectral_norm_symmetric(g.btb) : 0.0;
  Eigen::MatrixXd v(p.A.rows(), p.A.cols() + p.B.cols());
  v << p.A, p.B;
  g.s = smallest_nonzero_eigenvalue(v.transpose() * v);
  return g;
}

double stationarity_residual(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y, const Eigen::VectorXd& lambda) {
  const Eigen::VectorXd gx = p.f.gradient(x) + p.A.transpose() * lambda;
  const Eigen::VectorXd gy = p.g.gradient(y) + p.B.transpose() * lambda;
  const double rx = gx.size() > 0 ? gx.cwiseAbs().maxCoeff() : 0.0;
  const double ry = gy.size() > 0 ? gy.cwiseAbs().maxCoeff() : 0.0;
  return std::max(rx, ry);
}

double feasibility_residual(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y) {
  const Eigen::VectorXd r = constraint_residual(p, x, y);
  return r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

GadmmConditions verify_conditions_admm(const TwoBlockProblem& p, const GadmmParams& params) {
  if (params.rho <= 0 || params.beta <= 0)
    throw std::invalid_argument("verify_conditions_admm: rho and beta must be positive");
  const Grams g = make_grams(p);
  const double lf = p.f.grad_lipschitz;
  const double lg = p.g.grad_lipschitz;
  const Eigen::Index n1 = p.f.dim, n2 = p.g.dim;

  GadmmConditions out;
  out.y_invertibility = params.beta - (params.rho * g.btb_norm + lg);
  out.x_invertibility = params.beta - (params.rho * g.ata_norm + lf);
  out.b_gram_margin = params.beta - 2.0 * params.rho * g.btb_norm;

  const Eigen::MatrixXd c1 =
      params.beta * Eigen::MatrixXd::Identity(n1, n1) - params.rho * g.ata;
  const Eigen::MatrixXd c2_minus =
      params.beta * Eigen::MatrixXd::Identity(n2, n2) - 2.0 * params.rho * g.btb;
  Eigen::MatrixXd block_diag = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  block_diag.topLeftCorner(n1, n1) = c1;
  block_diag.bottomRightCorner(n2, n2) = c2_minus;

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  w.topLeftCorner(n1, n1) = g.ata;
  w.topRightCorner(n1, n2) = g.atb;
  w.bottomRightCorner(n2, n2) = g.btb;
  const Eigen::MatrixXd c =
      params.beta * Eigen::MatrixXd::Identity(n1 + n2, n1 + n2) - params.rho * w;

  const Eigen::MatrixXd coupling =
      0.5 * params.c * block_diag - (2.0 / (params.rho * g.s)) * c.transpose() * c;
  out.coupling_min_eig = symmetric_eigen(0.5 * (coupling + coupling.transpose())).values(0);

  out.x_descent = 0.5 * params.beta - 2.0 * params.c * lf - params.c * params.rho * g.ata_norm -
                  2.0 * lf * lf / (params.rho * g.s);
  out.y_descent = 0.5 * params.beta - 2.0 * params.c * lg - 2.0 * lg * lg / (params.rho * g.s);
  return out;
}

GadmmParams select_parameters_admm(const TwoBlockProblem& p) {
  const double lf = p.f.grad_lipschitz;
  const double lg = p.g.grad_lipschitz;
  if (lf <= 0 || lg <= 0)
    throw std::invalid_argument(
        "select_parameters_admm: gradient Lipschitz constants must be positive");
  const Grams g = make_grams(p);

  // Asymptotics of conditions 4-6 in beta: the lower bound on c grows like
  // 4 beta/(rho s) while the upper bounds grow like beta/(2(2Lf + rho||A^T A||))
  // and beta/(4Lg). A compatible rho therefore needs
  //   rho s > 8 (2 Lf + rho ||A^T A||)   and   rho s > 16 Lg.
  const double gap = g.s - 8.0 * g.ata_norm;
  if (gap <= 0)
    throw std::runtime_error(
        "select_parameters_admm: constraint geometry admits no parameters (needs the smallest "
        "nonzero eigenvalue of [A B]^T [A B] to exceed 8 ||A^T A||; consensus-shaped problems "
        "never satisfy this)");
  const double rho_floor = std::max(16.0 * lf / gap, 16.0 * lg / g.s);
  GadmmParams params;
  params.rho = 1.1 * rho_floor;

  const double base = std::max({params.rho * g.btb_norm + lg, params.rho * g.ata_norm + lf,
                                2.0 * params.rho * g.btb_norm});
  double margin = 1.05;
  GadmmConditions last;
  const Eigen::Index n1 = p.f.dim, n2 = p.g.dim;
  for (int attempt = 0; attempt <= 20; ++attempt, margin *= 2.0) {
    params.beta = margin * base;
    // Numeric feasible interval for c at this beta: condition 4 bounds c from
    // below via the scaled coupling matrix, conditions 5-6 from above.
    const Eigen::MatrixXd c1 =
        params.beta * Eigen::MatrixXd::Identity(n1, n1) - params.rho * g.ata;
    const Eigen::MatrixXd c2_minus =
        params.beta * Eigen::MatrixXd::Identity(n2, n2) - 2.0 * params.rho * g.btb;
    Eigen::MatrixXd block_diag = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
    block_diag.topLeftCorner(n1, n1) = c1;
    block_diag.bottomRightCorner(n2, n2) = c2_minus;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
    w.topLeftCorner(n1, n1) = g.ata;
    w.topRightCorner(n1, n2) = g.atb;
    w.bottomRightCorner(n2, n2) = g.btb;
    const Eigen::MatrixXd c =
        params.beta * Eigen::MatrixXd::Identity(n1 + n2, n1 + n2) - params.rho * w;

    const SymmetricEigen d_eig = symmetric_eigen(block_diag);
    if (d_eig.values(0) <= 0) continue;
    const Eigen::MatrixXd d_inv_sqrt = d_eig.vectors *
                                       d_eig.values.cwiseSqrt().cwiseInverse().asDiagonal() *
                                       d_eig.vectors.transpose();
    const Eigen::MatrixXd scaled = d_inv_sqrt * c.transpose() * c * d_inv_sqrt;
    const double scaled_max = symmetric_eigen(0.5 * (scaled + scaled.transpose()))
                                  .values(n1 + n2 - 1);
    const double c_lo = 4.0 * scaled_max / (params.rho * g.s);
    const double c_hi_x = (0.5 * params.beta - 2.0 * lf * lf / (params.rho * g.s)) /
                          (2.0 * lf + params.rho * g.ata_norm);
    const double c_hi_y = (0.5 * params.beta - 2.0 * lg * lg / (params.rho * g.s)) / (4.0 * lg);
    const double c_hi = std::min(c_hi_x, c_hi_y);
    params.c = c_lo < c_hi ? 0.5 * (c_lo + c_hi) : c_lo;
    last = verify_conditions_admm(p, params);
    if (last.all_hold()) return params;
  }
  std::string which = last.y_invertibility <= 0   ? "beta - (rho ||B^T B|| + L_g)"
                      : last.x_invertibility <= 0 ? "beta - (rho ||A^T A|| + L_f)"
                      : last.b_gram_margin <= 0   ? "beta - 2 rho ||B^T B||"
                      : last.coupling_min_eig <= 0
                          ? "coupling matrix positive definiteness"
                      : last.x_descent <= 0 ? "x-block descent margin"
                                            : "y-block descent margin";
  throw std::runtime_error("select_parameters_admm: bounded margin search failed; violated: " +
                           which);
}

TwoBlockState gadmm_step(const TwoBlockProblem& p, const TwoBlockState& s,
                         const GadmmParams& params) {
  if (s.x.size() != p.f.dim || s.y.size() != p.g.dim || s.lambda.size() != p.A.rows())
    throw std::invalid_argument("gadmm_step: state dimension mismatch");
  TwoBlockState next;
  const Eigen::VectorXd r0 = p.A * s.x + p.B * s.y - p.b;
  next.x = s.x - (1.0 / params.beta) *
                     (p.f.gradient(s.x) + p.A.transpose() * s.lambda +
                      params.rho * (p.A.transpose() * r0));
  const Eigen::VectorXd r1 = p.A * next.x + p.B * s.y - p.b;
  next.y = s.y - (1.0 / params.beta) *
                     (p.g.gradient(s.y) + p.B.transpose() * s.lambda +
                      params.rho * (p.B.transpose() * r1));
  next.lambda = s.lambda + params.rho * (p.A * next.x + p.B * next.y - p.b);
  next.x_prev = s.x;
  next.y_prev = s.y;
  next.lambda_prev = s.lambda;
  next.iter = s.iter + 1;
  return next;
}

double gadmm_potential(const TwoBlockProblem& p, const GadmmParams& params,
                       const TwoBlockState& s) {
  const Grams g = make_grams(p);
  const double lf = p.f.grad_lipschitz;
  const double lg = p.g.grad_lipschitz;
  const Eigen::VectorXd dx = s.x - s.x_prev;
  const Eigen::VectorXd dy = s.y - s.y_prev;
  const Eigen::VectorXd dl = s.lambda - s.lambda_prev;
  const double al = augmented_lagrangian(p, s.x, s.y, s.lambda, params.rho);
  // Weighted squared norms under C3 = (beta + L_f) I - rho A^T A and
  // C4 = (beta + L_g) I - rho B^T B, expanded without forming the matrices.
  const double c3_term = (params.beta + lf) * dx.squaredNorm() - params.rho * (p.A * dx).squaredNorm();
  const double c4_term = (params.beta + lg) * dy.squaredNorm() - params.rho * (p.B * dy).squaredNorm();
  return al + (params.c / params.rho) * dl.squaredNorm() + params.c * (c3_term + c4_term) +
         (2.0 * lf * lf / (params.rho * g.s)) * dx.squaredNorm() +
         (2.0 * lg * lg / (params.rho * g.s)) * dy.squaredNorm();
}

GadmmResult run_gadmm(const TwoBlockProblem& p, Eigen::VectorXd x0, Eigen::VectorXd y0,
                      Eigen::VectorXd lambda0, const GadmmParams& params,
                      const SolveOptions& opts) {
  if (y0.size() == 0) y0 = Eigen::VectorXd::Zero(p.g.dim);
  if (lambda0.size() == 0) lambda0 = Eigen::VectorXd::Zero(p.A.rows());
  if (x0.size() != p.f.dim || y0.size() != p.g.dim || lambda0.size() != p.A.rows())
    throw std::invalid_argument("run_gadmm: initial point dimension mismatch");
  if (!x0.allFinite() || !y0.allFinite() || !lambda0.allFinite())
    throw std::invalid_argument("run_gadmm: initial point must be finite");

  GadmmResult result;
  result.state = {x0, x0, y0, y0, lambda0, lambda0, 0};
  result.trajectory.dim = p.f.dim + p.g.dim;

  auto record = [&](const TwoBlockState& s) {
    if (!opts.record_trajectory) return;
    TrajectoryRow row;
    row.iter = s.iter;
    row.objective = p.f.value(s.x) + p.g.value(s.y);
    row.aug_lagrangian = augmented_lagrangian(p, s.x, s.y, s.lambda, params.rho);
    row.potential = gadmm_potential(p, params, s);
    row.stat_residual_inf = stationarity_residual(p, s.x, s.y, s.lambda);
    row.feas_residual_inf = feasibility_residual(p, s.x, s.y);
    row.x.resize(p.f.dim + p.g.dim);
    row.x << s.x, s.y;
    result.trajectory.rows.push_back(std::move(row));
  };

  auto converged = [&](const TwoBlockState& s) {
    return stationarity_residual(p, s.x, s.y, s.lambda) <= opts.stat_tol &&
           feasibility_residual(p, s.x, s.y) <= opts.feas_tol;
  };

  record(result.state);
  if (converged(result.state)) {
    result.status = SolveStatus::converged;
    return result;
  }
  for (int r = 1; r <= opts.max_iters; ++r) {
    result.state = gadmm_step(p, result.state, params);
    record(result.state);
    const bool finite = result.state.x.allFinite() && result.state.y.allFinite() &&
                        result.state.lambda.allFinite();
    const double xmax = std::max(result.state.x.size() > 0
                                     ? result.state.x.cwiseAbs().maxCoeff()
                                     : 0.0,
                                 result.state.y.size() > 0
                                     ? result.state.y.cwiseAbs().maxCoeff()
                                     : 0.0);
    if (!finite || xmax > opts.divergence_norm) {
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
