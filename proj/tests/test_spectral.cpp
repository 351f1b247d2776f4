#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gpda/gadmm.hpp"
#include "gpda/gpda.hpp"
#include "gpda/instances.hpp"
#include "gpda/linalg.hpp"
#include "gpda/rng.hpp"
#include "gpda/spectral.hpp"

using namespace gpda;

namespace {

Eigen::MatrixXd benchmark_hessian_at_origin() {
  Eigen::MatrixXd h(2, 2);
  h << 0, -2, -2, 0;
  return h;
}

Eigen::MatrixXd difference_row() {
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  return a;
}

// Random symmetric matrix with entries of unit scale.
Eigen::MatrixXd random_symmetric(Eigen::Index n, Rng& rng) {
  const Eigen::MatrixXd m = rng.gaussian_matrix(n, n);
  return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_CASE("single-block linearization blocks") {
  const Eigen::MatrixXd h = benchmark_hessian_at_origin();
  const Eigen::MatrixXd a = difference_row();
  const GpdaLinearization lin = gpda_linearization(h, a, 10.0, 200.0);
  REQUIRE(lin.Q.rows() == 3);
  REQUIRE(lin.T.rows() == 3);

  // Q is unit lower block triangular with -rho A below the diagonal.
  CHECK(lin.Q(2, 0) == doctest::Approx(-10.0));
  CHECK(lin.Q(2, 1) == doctest::Approx(10.0));
  CHECK(lin.Q(2, 2) == 1.0);
  CHECK(lin.Q(0, 2) == 0.0);

  // T carries I - (1/beta)(H + rho A^T A) and -(1/beta) A^T.
  CHECK(lin.T(0, 0) == doctest::Approx(1.0 - 10.0 / 200.0));
  CHECK(lin.T(0, 1) == doctest::Approx((2.0 + 10.0) / 200.0));
  CHECK(lin.T(0, 2) == doctest::Approx(-1.0 / 200.0));
  CHECK(lin.T(2, 2) == 1.0);

  // The assembled iteration matrix satisfies Q M = T exactly.
  const Eigen::MatrixXd m = gpda_iteration_matrix(lin);
  CHECK((lin.Q * m - lin.T).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("assembled map matches the numeric Jacobian of the real step") {
  // Quadratic objective: the step is affine, so agreement is near-exact.
  Rng rng(21);
  const Eigen::MatrixXd h = random_symmetric(3, rng) + 4.0 * Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd a = rng.gaussian_matrix(2, 3);
  Eigen::VectorXd feasible_b = a * Eigen::VectorXd::Ones(3);
  const ConstrainedProblem p(quadratic_objective(h, Eigen::VectorXd::Zero(3)), a, feasible_b);
  GpdaParams params;
  params.rho = 2.0;
  params.beta = 60.0;

  const auto step_map = [&](const Eigen::VectorXd& z) {
    PrimalDualState s;
    s.x = z.head(3);
    s.x_prev = s.x;
    s.lambda = z.tail(2);
    const PrimalDualState out = gpda_step(p, s, params);
    Eigen::VectorXd packed(5);
    packed << out.x, out.lambda;
    return packed;
  };

  Eigen::VectorXd z0(5);
  z0 << 0.3, -0.1, 0.7, 0.2, -0.4;
  const Eigen::MatrixXd jac = numeric_step_jacobian(step_map, z0);
  const Eigen::MatrixXd assembled =
      gpda_iteration_matrix(gpda_linearization(h, a, params.rho, params.beta));
  CHECK((jac - assembled).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("numeric Jacobian of the quartic step at its saddle") {
  const ConstrainedProblem p = two_var_saddle_instance();
  GpdaParams params;
  params.rho = 10.0;
  params.beta = 200.0;
  Eigen::VectorXd saddle(2);
  saddle << 0.5, -0.5;
  const Eigen::MatrixXd h = p.f.hessian(saddle);

  const auto step_map = [&](const Eigen::VectorXd& z) {
    PrimalDualState s;
    s.x = z.head(2);
    s.x_prev = s.x;
    s.lambda = z.tail(1);
    const PrimalDualState out = gpda_step(p, s, params);
    Eigen::VectorXd packed(3);
    packed << out.x, out.lambda;
    return packed;
  };

  Eigen::VectorXd z0(3);
  z0 << 0.5, -0.5, -1.125;
  const Eigen::MatrixXd jac = numeric_step_jacobian(step_map, z0);
  const Eigen::MatrixXd assembled =
      gpda_iteration_matrix(gpda_linearization(h, p.A, params.rho, params.beta));
  CHECK((jac - assembled).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("unstable eigenvalue at the centered saddle is exactly 1.01") {
  const Eigen::MatrixXd h = benchmark_hessian_at_origin();
  const Eigen::MatrixXd a = difference_row();
  const UnstableMode mode = unstable_eigenvalue_gpda(h, a, 10.0, 200.0);
  REQUIRE(mode.found);
  // On the null direction the pencil reads delta^2 - delta * (2/beta), so the
  // escape rate is delta* = 2/200.
  CHECK(mode.delta == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(mode.mu == doctest::Approx(1.01).epsilon(1e-9));
  CHECK(mode.eigensolve_gap <= 1e-8);

  // Direct spectrum: the real eigenvalue 1.01 plus a complex pair with
  // sum 1.79 and product 0.89 (trace and determinant of the coupled block).
  const Eigen::MatrixXd iter =
      gpda_iteration_matrix(gpda_linearization(h, a, 10.0, 200.0));
  const Eigen::VectorXcd eigs = general_real_eigenvalues(iter);
  REQUIRE(eigs.size() == 3);
  double best_gap = 1e9;
  for (Eigen::Index i = 0; i < 3; ++i)
    best_gap = std::min(best_gap, std::abs(eigs(i) - std::complex<double>(1.01, 0.0)));
  CHECK(best_gap < 1e-9);
  for (Eigen::Index i = 0; i < 3; ++i) {
    if (std::abs(eigs(i).imag()) > 1e-9) {
      CHECK(eigs(i).real() == doctest::Approx(0.895).epsilon(1e-9));
      CHECK(std::norm(eigs(i)) == doctest::Approx(0.89).epsilon(1e-9));
    }
  }

  // Spectral radius above one certifies instability of the fixed point.
  double radius = 0.0;
  for (Eigen::Index i = 0; i < 3; ++i) radius = std::max(radius, std::abs(eigs(i)));
  CHECK(radius > 1.0 + 1e-10);
}

TEST_CASE("no escape mode at second-order stationary points") {
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(2, 2);
  const UnstableMode mode = unstable_eigenvalue_gpda(h, difference_row(), 10.0, 50.0);
  CHECK_FALSE(mode.found);
}

TEST_CASE("step-size precondition is enforced") {
  const Eigen::MatrixXd h = benchmark_hessian_at_origin();
  // ||H + rho A^T A|| = 22 at rho = 10, so beta = 10 is inadmissible.
  CHECK_THROWS_AS(unstable_eigenvalue_gpda(h, difference_row(), 10.0, 10.0),
                  std::invalid_argument);
}

TEST_CASE("two-block linearization and the numeric Jacobian settle the sign") {
  Rng rng(77);
  const Eigen::MatrixXd h = random_symmetric(2, rng);
  const Eigen::MatrixXd g = random_symmetric(2, rng);
  const Eigen::MatrixXd a = rng.gaussian_matrix(2, 2);
  const Eigen::MatrixXd b = rng.gaussian_matrix(2, 2);
  const double rho = 1.5, beta = 40.0;

  const TwoBlockProblem p(quadratic_objective(h, Eigen::VectorXd::Zero(2)),
                          quadratic_objective(g, Eigen::VectorXd::Zero(2)), a, b,
                          Eigen::VectorXd::Zero(2));
  GadmmParams params;
  params.rho = rho;
  params.beta = beta;

  const auto step_map = [&](const Eigen::VectorXd& z) {
    TwoBlockState s;
    s.x = z.segment(0, 2);
    s.x_prev = s.x;
    s.y = z.segment(2, 2);
    s.y_prev = s.y;
    s.lambda = z.segment(4, 2);
    s.lambda_prev = s.lambda;
    const TwoBlockState out = gadmm_step(p, s, params);
    Eigen::VectorXd packed(6);
    packed << out.x, out.y, out.lambda;
    return packed;
  };

  Eigen::VectorXd z0(6);
  z0 << 0.1, -0.3, 0.2, 0.5, -0.2, 0.4;
  const Eigen::MatrixXd jac = numeric_step_jacobian(step_map, z0);
  const Eigen::MatrixXd assembled =
      gadmm_iteration_matrix(gadmm_linearization(h, g, a, b, rho, beta));
  CHECK((jac - assembled).cwiseAbs().maxCoeff() < 1e-9);

  // The sign-flipped variant of the y block stays measurably different.
  const Eigen::MatrixXd variant = gadmm_transition_sign_variant(h, g, a, b, rho, beta);
  CHECK((jac - variant).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("reduced pencil tracks the two-block characteristic polynomial") {
  Rng rng(5);
  const Eigen::Index n1 = 2, n2 = 2;

  SUBCASE("rectangular constraints carry the (1-mu) factor") {
    const Eigen::MatrixXd h = random_symmetric(n1, rng);
    const Eigen::MatrixXd g = random_symmetric(n2, rng);
    const Eigen::MatrixXd a = rng.gaussian_matrix(2, n1);
    const Eigen::MatrixXd b = rng.gaussian_matrix(2, n2);
    const double rho = 2.0, beta = 30.0;
    const GadmmLinearization lin = gadmm_linearization(h, g, a, b, rho, beta);
    Rng mu_rng(123);
    for (int k = 0; k < 20; ++k) {
      const double mu = -2.0 + 5.0 * mu_rng.uniform();
      const double lhs = u_matrix(h, g, a, b, rho, beta, mu).determinant();
      const double factor = std::pow(1.0 - mu, static_cast<double>(n1 + n2 - 2));
      const double rhs = factor * (lin.T - mu * lin.P).determinant();
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
    }
  }

  SUBCASE("square constraints match verbatim") {
    const Eigen::MatrixXd h = random_symmetric(n1, rng);
    const Eigen::MatrixXd g = random_symmetric(n2, rng);
    const Eigen::MatrixXd a = rng.gaussian_matrix(4, n1);
    const Eigen::MatrixXd b = rng.gaussian_matrix(4, n2);
    const double rho = 1.0, beta = 25.0;
    const GadmmLinearization lin = gadmm_linearization(h, g, a, b, rho, beta);
    Rng mu_rng(321);
    for (int k = 0; k < 20; ++k) {
      const double mu = -2.0 + 5.0 * mu_rng.uniform();
      const double lhs = u_matrix(h, g, a, b, rho, beta, mu).determinant();
      const double rhs = (lin.T - mu * lin.P).determinant();
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("pencil endpoints") {
  Rng rng(9);
  const Eigen::MatrixXd h = random_symmetric(2, rng);
  const Eigen::MatrixXd g = random_symmetric(3, rng);
  const Eigen::MatrixXd a = rng.gaussian_matrix(2, 2);
  const Eigen::MatrixXd b = rng.gaussian_matrix(2, 3);
  const double rho = 2.0, beta = 50.0;

  // mu = 1 collapses to the scaled Gram matrix of the stacked constraints.
  Eigen::MatrixXd v(2, 5);
  v << a, b;
  const Eigen::MatrixXd at_one = u_matrix(h, g, a, b, rho, beta, 1.0);
  CHECK((at_one - (rho / beta) * v.transpose() * v).cwiseAbs().maxCoeff() < 1e-12);

  // mu = 0 is block upper triangular with the one-step primal blocks on the
  // diagonal, hence invertible for beta above both descent thresholds.
  const Eigen::MatrixXd at_zero = u_matrix(h, g, a, b, rho, beta, 0.0);
  CHECK(at_zero.bottomLeftCorner(3, 2).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd xa =
      Eigen::MatrixXd::Identity(2, 2) - (h + rho * a.transpose() * a) / beta;
  CHECK((at_zero.topLeftCorner(2, 2) - xa).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(at_zero.determinant()) > 1e-6);
}

TEST_CASE("symmetric similarity preserves the pencil spectrum") {
  Rng rng(13);
  const Eigen::MatrixXd h = random_symmetric(2, rng);
  const Eigen::MatrixXd g = random_symmetric(2, rng);
  const Eigen::MatrixXd a = rng.gaussian_matrix(2, 2);
  const Eigen::MatrixXd b = rng.gaussian_matrix(2, 2);
  const double rho = 1.0, beta = 30.0;

  for (double delta : {-0.2, 0.05, 0.5, 2.0}) {
    const Eigen::MatrixXd sym = symmetric_similarity(h, g, a, b, rho, beta, delta);
    CHECK((sym - sym.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd sym_eigs = symmetric_eigen(sym).values;
    const Eigen::VectorXcd u_eigs =
        general_real_eigenvalues(u_matrix(h, g, a, b, rho, beta, 1.0 + delta));
    // The pencil spectrum is real beyond delta = -1/2 and matches.
    for (Eigen::Index i = 0; i < u_eigs.size(); ++i) {
      CHECK(std::abs(u_eigs(i).imag()) <= 1e-9);
      CHECK(u_eigs(i).real() == doctest::Approx(sym_eigs(i)).epsilon(1e-7));
    }
  }
  CHECK_THROWS_AS(symmetric_similarity(h, g, a, b, rho, beta, -0.6), std::invalid_argument);
}

TEST_CASE("border gain hand value") {
  // With A = B = [1] and rho = beta the bordered matrix is [[1,1],[1,2]],
  // whose largest eigenvalue is (3 + sqrt 5)/2.
  Eigen::MatrixXd one(1, 1);
  one << 1;
  CHECK(gadmm_border_gain(one, one, 5.0, 5.0) ==
        doctest::Approx(0.5 * (3.0 + std::sqrt(5.0))));
  // Decoupled blocks give gain exactly one.
  CHECK(gadmm_border_gain(one, Eigen::MatrixXd::Zero(1, 1), 2.0, 10.0) ==
        doctest::Approx(1.0));
}

TEST_CASE("probe formula") {
  CHECK(gadmm_probe_delta(2.0, 1.0, 10.0, 3) == doctest::Approx(0.02));
  CHECK(gadmm_probe_delta(1.0, 2.0, 5.0, 2) == doctest::Approx(1.0 / 60.0));
}

TEST_CASE("two-block escape certificate on a curved instance") {
  // Single coupling row x - y = 0; f concave, g flat: the consensus direction
  // (1,1)/sqrt(2) has curvature -1.
  Eigen::MatrixXd h(1, 1), g(1, 1), a(1, 1), b(1, 1);
  h << -2;
  g << 0;
  a << 1;
  b << -1;
  const double rho = 1.0, beta = 10.0, sigma = 1.0;

  const UnstableMode mode = unstable_eigenvalue_gadmm(h, g, a, b, rho, beta, sigma);
  REQUIRE(mode.found);
  CHECK(mode.delta > 0.0);
  CHECK(mode.mu == doctest::Approx(1.0 + mode.delta));

  // The certified root leaves the symmetric pencil singular to tolerance.
  const Eigen::VectorXd eigs =
      symmetric_eigen(symmetric_similarity(h, g, a, b, rho, beta, mode.delta)).values;
  CHECK(eigs.cwiseAbs().minCoeff() <= 2e-9);

  // And the direct eigensolve of the assembled map confirms the eigenvalue.
  CHECK(mode.eigensolve_gap <= 1e-8);

  // Probe lower bound: the pencil is provably negative at the probe point.
  const double d = gadmm_border_gain(a, b, rho, beta);
  const double delta_p = gadmm_probe_delta(sigma, d, beta, 2);
  const double min_eig =
      symmetric_eigen(symmetric_similarity(h, g, a, b, rho, beta, delta_p)).values(0);
  CHECK(min_eig <= -0.9 * sigma * sigma / (4.0 * beta * beta * (2.0 * 2 - 1.0)));
}

TEST_CASE("no two-block escape without negative curvature") {
  Eigen::MatrixXd h(1, 1), g(1, 1), a(1, 1), b(1, 1);
  h << 2;
  g << 1;
  a << 1;
  b << -1;
  CHECK_THROWS_AS(unstable_eigenvalue_gadmm(h, g, a, b, 1.0, 10.0, 0.0),
                  std::invalid_argument);
  const UnstableMode mode = unstable_eigenvalue_gadmm(h, g, a, b, 1.0, 10.0, 1.0);
  CHECK_FALSE(mode.found);
}

TEST_CASE("numeric Jacobian is exact on affine maps") {
  Rng rng(3);
  const Eigen::MatrixXd m = rng.gaussian_matrix(4, 4);
  const Eigen::VectorXd w = rng.gaussian_vector(4);
  const auto affine = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd { return m * z + w; };
  const Eigen::VectorXd z0 = rng.gaussian_vector(4);
  CHECK((numeric_step_jacobian(affine, z0) - m).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("matching distance between spectra") {
  CHECK(optimal_matching_distance(Eigen::MatrixXd::Identity(3, 3),
                                  Eigen::MatrixXd::Identity(3, 3)) == doctest::Approx(0.0));

  Eigen::MatrixXd f(2, 2), ft(2, 2);
  f << 1, 0, 0, 2;
  ft << 2.1, 0, 0, 0.9;
  // Pair 1 with 0.9 and 2 with 2.1: worst gap 0.1. The crossed pairing costs 1.1.
  CHECK(optimal_matching_distance(f, ft) == doctest::Approx(0.1));

  // Similar matrices share a spectrum.
  Eigen::MatrixXd p(2, 2);
  p << 2, 1, 1, 1;
  const Eigen::MatrixXd sim = p * f * p.inverse();
  CHECK(optimal_matching_distance(f, sim) <= 1e-9);

  // Complex pairs match by conjugate symmetry.
  Eigen::MatrixXd rot(2, 2), rot2(2, 2);
  rot << 0, -1, 1, 0;
  rot2 << 0, -2, 2, 0;
  CHECK(optimal_matching_distance(rot, rot2) == doctest::Approx(1.0));
}

TEST_CASE("matching distance respects the conditioned perturbation bound") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd f = rng.gaussian_matrix(4, 4);
    const Eigen::MatrixXd e = 1e-6 * rng.gaussian_matrix(4, 4);
    const double md = optimal_matching_distance(f, f + e);
    // Loose sanity: a tiny perturbation cannot move the matched spectra far.
    CHECK(md <= 1e-2);
    CHECK(md >= 0.0);
  }
}
