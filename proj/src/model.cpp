#include "gpda/model.hpp"

#include <memory>
#include <stdexcept>
#include <utility>

namespace gpda {

namespace {

void require_oracle(const ObjectiveOracle& f, const char* who) {
  if (f.dim < 0) throw std::invalid_argument(std::string(who) + ": negative dimension");
  if (!f.value || !f.gradient || !f.hessian)
    throw std::invalid_argument(std::string(who) + ": oracle is missing an evaluator");
}

void require_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const char* who) {
  if (A.rows() != b.size())
    throw std::invalid_argument(std::string(who) + ": A and b row counts differ");
  if (A.rows() == 0) return;  // no constraints, trivially feasible
  const Eigen::VectorXd x_ls = A.colPivHouseholderQr().solve(b);
  const double residual = (A * x_ls - b).norm();
  if (residual > 1e-8 * (1.0 + b.norm()))
    throw std::invalid_argument(std::string(who) +
                                ": constraint system Ax = b has no solution (least-squares "
                                "residual " +
                                std::to_string(residual) + ")");
}

}  // namespace

ObjectiveOracle zero_objective(Eigen::Index dim) {
  ObjectiveOracle f;
  f.dim = dim;
  f.value = [](const Eigen::VectorXd&) { return 0.0; };
  f.gradient = [dim](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(dim).eval(); };
  f.hessian = [dim](const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(dim, dim).eval(); };
  f.grad_lipschitz = 0.0;
  f.hess_lipschitz = 0.0;
  return f;
}

ObjectiveOracle quadratic_objective(const Eigen::MatrixXd& H, const Eigen::VectorXd& q) {
  if (H.rows() != H.cols()) throw std::invalid_argument("quadratic_objective: H must be square");
  if (H.rows() != q.size())
    throw std::invalid_argument("quadratic_objective: H and q dimensions differ");
  const double scale = H.size() > 0 ? H.cwiseAbs().maxCoeff() : 0.0;
  if (H.size() > 0 && (H - H.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("quadratic_objective: H must be symmetric");

  ObjectiveOracle f;
  f.dim = H.rows();
  f.value = [H, q](const Eigen::VectorXd& x) { return 0.5 * x.dot(H * x) + q.dot(x); };
  f.gradient = [H, q](const Eigen::VectorXd& x) { return (H * x + q).eval(); };
  f.hessian = [H](const Eigen::VectorXd&) { return H; };
  // Exact constants for a quadratic: the Hessian is constant.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  f.grad_lipschitz = H.size() > 0 ? es.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
  f.hess_lipschitz = 0.0;
  return f;
}

ObjectiveOracle separable_objective(std::vector<ObjectiveOracle> parts) {
  const auto n = static_cast<Eigen::Index>(parts.size());
  for (const auto& part : parts) {
    require_oracle(part, "separable_objective");
    if (part.dim != 1)
      throw std::invalid_argument("separable_objective: every part must be scalar");
  }
  auto shared = std::make_shared<std::vector<ObjectiveOracle>>(std::move(parts));

  ObjectiveOracle f;
  f.dim = n;
  f.value = [shared, n](const Eigen::VectorXd& x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      total += (*shared)[static_cast<size_t>(i)].value(x.segment(i, 1));
    return total;
  };
  f.gradient = [shared, n](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i)
      g(i) = (*shared)[static_cast<size_t>(i)].gradient(x.segment(i, 1))(0);
    return g;
  };
  f.hessian = [shared, n](const Eigen::VectorXd& x) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      h(i, i) = (*shared)[static_cast<size_t>(i)].hessian(x.segment(i, 1))(0, 0);
    return h;
  };
  for (const auto& part : *shared) {
    f.grad_lipschitz += part.grad_lipschitz;
    f.hess_lipschitz += part.hess_lipschitz;
  }
  return f;
}

ConstrainedProblem::ConstrainedProblem(ObjectiveOracle f_in, Eigen::MatrixXd A_in,
                                       Eigen::VectorXd b_in)
    : f(std::move(f_in)), A(std::move(A_in)), b(std::move(b_in)) {
  require_oracle(f, "ConstrainedProblem");
  if (A.cols() != f.dim)
    throw std::invalid_argument("ConstrainedProblem: A column count must equal oracle dimension");
  require_feasible(A, b, "ConstrainedProblem");
}

TwoBlockProblem::TwoBlockProblem(ObjectiveOracle f_in, ObjectiveOracle g_in, Eigen::MatrixXd A_in,
                                 Eigen::MatrixXd B_in, Eigen::VectorXd b_in)
    : f(std::move(f_in)),
      g(std::move(g_in)),
      A(std::move(A_in)),
      B(std::move(B_in)),
      b(std::move(b_in)) {
  require_oracle(f, "TwoBlockProblem");
  require_oracle(g, "TwoBlockProblem");
  if (A.cols() != f.dim || B.cols() != g.dim)
    throw std::invalid_argument("TwoBlockProblem: block column counts must match oracle dims");
  if (A.rows() != B.rows())
    throw std::invalid_argument("TwoBlockProblem: A and B row counts differ");
  Eigen::MatrixXd v(A.rows(), A.cols() + B.cols());
  v << A, B;
  require_feasible(v, b, "TwoBlockProblem");
}

Eigen::VectorXd constraint_residual(const ConstrainedProblem& p, const Eigen::VectorXd& x) {
  if (x.size() != p.A.cols())
    throw std::invalid_argument("constraint_residual: x dimension mismatch");
  return p.A * x - p.b;
}

Eigen::VectorXd constraint_residual(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y) {
  if (x.size() != p.A.cols() || y.size() != p.B.cols())
    throw std::invalid_argument("constraint_residual: block dimension mismatch");
  return p.A * x + p.B * y - p.b;
}

double augmented_lagrangian(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& lambda, double rho) {
  if (rho <= 0) throw std::invalid_argument("augmented_lagrangian: rho must be positive");
  if (lambda.size() != p.A.rows())
    throw std::invalid_argument("augmented_lagrangian: lambda dimension mismatch");
  const Eigen::VectorXd r = constraint_residual(p, x);
  return p.f.value(x) + lambda.dot(r) + 0.5 * rho * r.squaredNorm();
}

double augmented_lagrangian(const TwoBlockProblem& p, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, const Eigen::VectorXd& lambda, double rho) {
  if (rho <= 0) throw std::invalid_argument("augmented_lagrangian: rho must be positive");
  if (lambda.size() != p.A.rows())
    throw std::invalid_argument("augmented_lagrangian: lambda dimension mismatch");
  const Eigen::VectorXd r = constraint_residual(p, x, y);
  return p.f.value(x) + p.g.value(y) + lambda.dot(r) + 0.5 * rho * r.squaredNorm();
}

DerivativeCheck check_derivatives(const ObjectiveOracle& f,
                                  const std::vector<Eigen::VectorXd>& points) {
  require_oracle(f, "check_derivatives");
  DerivativeCheck out;
  for (const auto& x : points) {
    if (x.size() != f.dim)
      throw std::invalid_argument("check_derivatives: point dimension mismatch");
    const double h = 1e-5 * (1.0 + x.norm());
    const Eigen::VectorXd g = f.gradient(x);
    const Eigen::MatrixXd hess = f.hessian(x);

    Eigen::VectorXd g_fd(f.dim);
    Eigen::MatrixXd h_fd(f.dim, f.dim);
    for (Eigen::Index j = 0; j < f.dim; ++j) {
      Eigen::VectorXd xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      g_fd(j) = (f.value(xp) - f.value(xm)) / (2.0 * h);
      h_fd.col(j) = (f.gradient(xp) - f.gradient(xm)) / (2.0 * h);
    }
    const double ge = (g - g_fd).norm() / (1.0 + std::max(g.norm(), g_fd.norm()));
    const double he = (hess - h_fd).norm() / (1.0 + std::max(hess.norm(), h_fd.norm()));
    out.grad_error = std::max(out.grad_error, ge);
    out.hess_error = std::max(out.hess_error, he);
  }
  return out;
}

}  // namespace gpda
