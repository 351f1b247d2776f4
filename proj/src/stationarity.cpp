#include "gpda/stationarity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpda/linalg.hpp"

namespace gpda {

namespace {

/// Shared classification core on the assembled pieces: gradient/Hessian of
/// the full primal vector, constraint matrix, and first-order fit.
Classification classify_core(const Eigen::MatrixXd& hess, const Eigen::MatrixXd& a,
                             MultiplierFit fit, const ClassifyOptions& opts) {
  Classification out;
  out.first_order = std::move(fit);
  if (out.first_order.stat_residual_inf > opts.stat_tol ||
      out.first_order.feas_residual_inf > opts.feas_tol) {
    out.verdict = StationarityClass::not_ss1;
    return out;
  }

  const Eigen::MatrixXd basis = null_space_basis(a);
  out.null_dim = basis.cols();
  if (out.null_dim == 0) {
    // No feasible directions: the second-order condition quantifies over an
    // empty set.
    out.verdict = StationarityClass::ss2;
    out.min_projected_curvature = std::numeric_limits<double>::infinity();
    return out;
  }

  const Eigen::MatrixXd projected = basis.transpose() * hess * basis;
  const SymmetricEigen eig = symmetric_eigen(0.5 * (projected + projected.transpose()));
  out.min_projected_curvature = eig.values(0);
  const double tol = opts.curvature_tol > 0
                         ? opts.curvature_tol
                         : 1e-8 * (1.0 + spectral_norm_symmetric(0.5 * (hess + hess.transpose())));
  if (out.min_projected_curvature >= -tol) {
    out.verdict = StationarityClass::ss2;
    if (out.min_projected_curvature > tol) {
      const PenalizedCertificate cert = penalized_hessian_certificate(hess, a);
      if (cert.found) out.gamma_certificate = cert.gamma;
    }
    return out;
  }
  out.verdict = StationarityClass::strict_saddle;
  out.sigma = -out.min_projected_curvature;
  out.witness = basis * eig.vectors.col(0);
  out.witness.normalize();
  return out;
}

}  // namespace

const char* to_string(StationarityClass verdict) {
  switch (verdict) {
    case StationarityClass::not_ss1: return "not_ss1";
    case StationarityClass::ss2: return "ss2";
    case StationarityClass::strict_saddle: return "strict_saddle";
    case StationarityClass::indeterminate: return "indeterminate";
  }
  return "unknown";
}

MultiplierFit fit_multiplier(const ConstrainedProblem& p, const Eigen::VectorXd& x) {
  if (x.size() != p.f.dim) throw std::invalid_argument("fit_multiplier: dimension mismatch");
  MultiplierFit fit;
  const Eigen::VectorXd grad = p.f.gradient(x);
  if (p.A.rows() == 0) {
    fit.lambda = Eigen::VectorXd(0);
  } else {
    fit.lambda = (p.A.transpose()).colPivHouseholderQr().solve(-grad);
  }
  std::tie(fit.stat_residual_inf, fit.feas_residual_inf) = ss1_residual(p, x, fit.lambda);
  return fit;
}

std::pair<double, double> ss1_residual(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& lambda) {
  if (x.size() != p.f.dim || lambda.size() != p.A.rows())
    throw std::invalid_argument("ss1_residual: dimension mismatch");
  const Eigen::VectorXd g = p.f.gradient(x) + p.A.transpose() * lambda;
  const Eigen::VectorXd r = p.A * x - p.b;
  return {g.size() > 0 ? g.cwiseAbs().maxCoeff() : 0.0,
          r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0};
}

Classification classify_stationary_point(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                                         const ClassifyOptions& opts) {
  return classify_core(p.f.hessian(x), p.A, fit_multiplier(p, x), opts);
}

Classification classify_stationary_point(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& y, const ClassifyOptions& opts) {
  if (x.size() != p.f.dim || y.size() != p.g.dim)
    throw std::invalid_argument("classify_stationary_point: block dimension mismatch");
  const Eigen::Index n1 = p.f.dim, n2 = p.g.dim;
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  hess.topLeftCorner(n1, n1) = p.f.hessian(x);
  hess.bottomRightCorner(n2, n2) = p.g.hessian(y);
  Eigen::MatrixXd v(p.A.rows(), n1 + n2);
  v << p.A, p.B;

  MultiplierFit fit;
  Eigen::VectorXd grad(n1 + n2);
  grad << p.f.gradient(x), p.g.gradient(y);
  if (v.rows() == 0) {
    fit.lambda = Eigen::VectorXd(0);
  } else {
    fit.lambda = v.transpose().colPivHouseholderQr().solve(-grad);
  }
  const Eigen::VectorXd g_res = grad + v.transpose() * fit.lambda;
  const Eigen::VectorXd r = constraint_residual(p, x, y);
  fit.stat_residual_inf = g_res.size() > 0 ? g_res.cwiseAbs().maxCoeff() : 0.0;
  fit.feas_residual_inf = r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
  return classify_core(hess, v, std::move(fit), opts);
}

PenalizedCertificate penalized_hessian_certificate(const Eigen::MatrixXd& H,
                                                   const Eigen::MatrixXd& A, double gamma_max,
                                                   int steps) {
  if (H.rows() != H.cols() || A.cols() != H.rows())
    throw std::invalid_argument("penalized_hessian_certificate: shape mismatch");
  if (gamma_max <= 0 || steps < 2)
    throw std::invalid_argument("penalized_hessian_certificate: bad sweep parameters");
  const Eigen::MatrixXd gram = A.transpose() * A;
  const double gamma_min = 1e-4;
  const double ratio = std::pow(gamma_max / gamma_min, 1.0 / (steps - 1));

  PenalizedCertificate cert;
  cert.best_min_eig = -std::numeric_limits<double>::infinity();
  double gamma = gamma_min;
  for (int k = 0; k < steps; ++k, gamma *= ratio) {
    const Eigen::MatrixXd m = 0.5 * (H + H.transpose()) + gamma * gram;
    const double min_eig = symmetric_eigen(m).values(0);
    if (min_eig > cert.best_min_eig) cert.best_min_eig = min_eig;
    if (min_eig > 0 && !cert.found) {
      cert.found = true;
      cert.gamma = gamma;
      cert.min_eig = min_eig;
    }
  }
  return cert;
}

}  // namespace gpda
