#include "doctest.h"

#include <cstdint>
#include <random>

#include "gpda/rng.hpp"

using namespace gpda;

TEST_CASE("mt19937_64 stream is the standard one") {
  // The standard fixes this value, so any platform drift would show up here.
  std::mt19937_64 gen;
  gen.discard(9999);
  CHECK(gen() == 9981545732273789042ULL);
}

TEST_CASE("uniform maps the top 53 bits of the raw draw") {
  std::mt19937_64 twin(123);
  Rng rng(123);
  for (int k = 0; k < 32; ++k) {
    const double expected = static_cast<double>(twin() >> 11) * 0x1p-53;
    CHECK(rng.uniform() == expected);
  }
}

TEST_CASE("same seed, same stream") {
  Rng a(7), b(7);
  for (int k = 0; k < 64; ++k) CHECK(a.gaussian() == b.gaussian());
  Rng c(8);
  bool all_equal = true;
  Rng a2(7);
  for (int k = 0; k < 16; ++k) all_equal = all_equal && (a2.gaussian() == c.gaussian());
  CHECK(!all_equal);
}

TEST_CASE("uniform stays in [0, 1)") {
  Rng rng(11);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian sample moments") {
  Rng rng(2024);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double g = rng.gaussian();
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("gaussian_matrix fills row by row from the scalar stream") {
  Rng scalar(99), matrix(99);
  const Eigen::MatrixXd m = matrix.gaussian_matrix(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m(i, j) == scalar.gaussian());
}

TEST_CASE("gaussian_vector matches the scalar stream") {
  Rng scalar(5), vector(5);
  const Eigen::VectorXd v = vector.gaussian_vector(4);
  for (int i = 0; i < 4; ++i) CHECK(v(i) == scalar.gaussian());
}

TEST_CASE("random_orthogonal is orthogonal and seed-stable") {
  Rng rng(31);
  const Eigen::MatrixXd u = random_orthogonal(5, rng);
  const Eigen::MatrixXd gram = u.transpose() * u;
  CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng2(31);
  const Eigen::MatrixXd u2 = random_orthogonal(5, rng2);
  CHECK((u - u2).cwiseAbs().maxCoeff() == 0.0);
}
