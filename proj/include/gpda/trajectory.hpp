#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace gpda {

struct TrajectoryRow {
  int iter = 0;
  double objective = 0.0;
  double aug_lagrangian = 0.0;
  double potential = 0.0;
  double stat_residual_inf = 0.0;
  double feas_residual_inf = 0.0;
  Eigen::VectorXd x;  ///< stacked primal iterate
};

struct Trajectory {
  Eigen::Index dim = 0;  ///< length of each row's x
  std::vector<TrajectoryRow> rows;
};

/// Fixed "%.17g" rendering: round-trip exact and byte-stable across runs.
std::string format_double(double v);

/// Header iter,objective,aug_lagrangian,potential,stat_residual_inf,
/// feas_residual_inf, then x1..xN when dim <= 32. One row per iteration,
/// row 0 being the initial state.
void write_trajectory_csv(const Trajectory& t, std::ostream& out);

/// Round log variant used by the distributed simulators: identical columns
/// with agent_id inserted after iter and one row per agent per round; the x
/// column carries the agent's own scalar while the global columns repeat.
struct AgentRow {
  int iter = 0;
  int agent_id = 0;
  double objective = 0.0;
  double aug_lagrangian = 0.0;
  double potential = 0.0;
  double stat_residual_inf = 0.0;
  double feas_residual_inf = 0.0;
  double x = 0.0;
};

void write_round_csv(const std::vector<AgentRow>& rows, std::ostream& out);

}  // namespace gpda
