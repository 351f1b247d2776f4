#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gpda/graph.hpp"
#include "gpda/model.hpp"

namespace gpda {

/// One node of the decentralized iteration. An update reads only the agent's
/// own two-step memory and the neighbor values delivered to its inboxes, so
/// the recursion runs on graph-local information alone.
struct Agent {
  int id = 0;
  ObjectiveOracle local;        ///< scalar objective f_i
  std::vector<int> neighbors;   ///< sorted ids
  double x_curr = 0.0;
  double x_prev = 0.0;
  std::vector<double> inbox_curr;  ///< aligned with neighbors; round-r values
  std::vector<double> inbox_prev;  ///< round r-1 values
};

struct RoundLog {
  int round = 0;
  Eigen::VectorXd values;
  double consensus_error = 0.0;  ///< max_{i,j} |x_i - x_j|
  double objective = 0.0;        ///< sum_i f_i(x_i)
};

/// Synchronous-round simulation of consensus GPDA over a connected graph.
/// After a bootstrap step from the plain primal update at lambda^0 = 0, every
/// round applies the history recursion
///   x_i+ = 2 x_i - x_i^- + (1/beta) ( -f_i'(x_i) + f_i'(x_i^-)
///          - 2 rho (d_i x_i - sum_j x_j) + rho (d_i x_i^- - sum_j x_j^-) ),
/// which eliminates the multiplier and reproduces the centralized iterates on
/// the incidence-constrained problem exactly.
class DistributedGpda {
 public:
  DistributedGpda(const Graph& graph, std::vector<ObjectiveOracle> locals, double rho,
                  double beta);

  /// Installs x^0, runs one neighbor exchange, and computes x^1 from the
  /// bootstrap update. Afterwards round_index() == 1.
  void initialize(const Eigen::VectorXd& x0);

  /// One synchronous round: exchange, then every agent advances from its
  /// inboxes alone. Returns the log of the new iterate.
  RoundLog advance();

  RoundLog log_for_current() const;
  Eigen::VectorXd stacked() const;
  int round_index() const { return round_; }
  bool values_finite() const;
  const std::vector<Agent>& agents() const { return agents_; }

  /// Test hook for the locality contract: overwrite one agent's current
  /// value as if its state were corrupted between rounds.
  void overwrite_value(int agent_id, double value);

 private:
  void exchange();  ///< shifts inboxes and delivers neighbor values

  std::vector<Agent> agents_;
  double rho_ = 0.0;
  double beta_ = 0.0;
  int round_ = -1;  ///< index of the iterate held in x_curr; -1 before initialize
};

struct DistributedRun {
  std::vector<RoundLog> logs;            ///< entry r describes iterate r
  Eigen::MatrixXd distributed_iterates;  ///< row r = stacked iterate r
  Eigen::MatrixXd centralized_iterates;
  double max_relative_deviation = 0.0;   ///< over rounds where both are finite
  int distributed_divergence_round = -1;
  int centralized_divergence_round = -1;
};

/// Runs the simulation for the given number of rounds alongside a centralized
/// twin (same parameters, lambda^0 = 0) and reports the worst relative
/// inf-norm deviation between the two iterate sequences.
DistributedRun run_distributed(const Graph& graph, const std::vector<ObjectiveOracle>& locals,
                               double rho, double beta, const Eigen::VectorXd& x0, int rounds);

/// Star-topology two-block consensus state: workers hold (x_i, lambda_i), the
/// master holds the shared scalar y.
struct StarState {
  Eigen::VectorXd x;
  double y = 0.0;
  Eigen::VectorXd lambda;
};

/// One round of the alternating star iteration, the two-block step
/// specialized to A = I, B = -1 (column of -1s), b = 0:
///   worker i:  x_i+ = x_i - (1/beta)(f_i'(x_i) + lambda_i + rho (x_i - y))
///   master:    y+   = y  - (1/beta)(g'(y) - sum_i (lambda_i + rho (x_i+ - y)))
///   worker i:  lambda_i+ = lambda_i + rho (x_i+ - y+)
/// Worker updates are mutually independent, so any evaluation order yields
/// the same round result.
class StarGadmm {
 public:
  StarGadmm(std::vector<ObjectiveOracle> workers, ObjectiveOracle master, double rho,
            double beta);

  void initialize(const Eigen::VectorXd& x0, double y0);  ///< multipliers start at zero

  /// Advances one round; worker_order (a permutation of 0..n-1) fixes the
  /// evaluation order, empty means natural order.
  void round(const std::vector<int>& worker_order = {});

  const StarState& state() const { return state_; }
  bool values_finite() const;

 private:
  std::vector<ObjectiveOracle> workers_;
  ObjectiveOracle master_;
  double rho_ = 0.0;
  double beta_ = 0.0;
  StarState state_;
};

struct StarRun {
  Eigen::MatrixXd worker_iterates;      ///< row r = x^r
  Eigen::VectorXd master_iterates;      ///< entry r = y^r
  Eigen::MatrixXd multiplier_iterates;  ///< row r = lambda^r
  double max_relative_deviation = 0.0;  ///< vs the centralized two-block solver
};

StarRun run_star(const std::vector<ObjectiveOracle>& workers, const ObjectiveOracle& master,
                 double rho, double beta, const Eigen::VectorXd& x0, double y0, int rounds,
                 const std::vector<int>& worker_order = {});

}  // namespace gpda
