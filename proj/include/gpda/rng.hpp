#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace gpda {

/// Seeded random source with a platform-stable stream. mt19937_64 output is
/// fixed by the standard, and the samplers below avoid std::*_distribution
/// (whose mapping from raw bits is implementation-defined), so every draw is
/// bit-identical for a given seed wherever the code runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1), 53 random bits.
  double uniform();

  /// Standard normal via the Marsaglia polar method (second value cached).
  double gaussian();

  Eigen::VectorXd gaussian_vector(Eigen::Index n);

  /// Filled entry (0,0), (0,1), ..., row by row.
  Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Random orthogonal matrix: Householder QR of a gaussian square sample with
/// the sign convention R(i,i) >= 0, which makes the factor unique and the
/// result reproducible from the seed alone.
Eigen::MatrixXd random_orthogonal(Eigen::Index n, Rng& rng);

}  // namespace gpda
