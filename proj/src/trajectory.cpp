#include "gpda/trajectory.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace gpda {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& t, std::ostream& out) {
  const bool with_x = t.dim <= 32;
  out << "iter,objective,aug_lagrangian,potential,stat_residual_inf,feas_residual_inf";
  if (with_x)
    for (Eigen::Index i = 0; i < t.dim; ++i) out << ",x" << (i + 1);
  out << '\n';
  for (const auto& row : t.rows) {
    if (row.x.size() != t.dim)
      throw std::invalid_argument("write_trajectory_csv: row dimension mismatch");
    out << row.iter << ',' << format_double(row.objective) << ','
        << format_double(row.aug_lagrangian) << ',' << format_double(row.potential) << ','
        << format_double(row.stat_residual_inf) << ',' << format_double(row.feas_residual_inf);
    if (with_x)
      for (Eigen::Index i = 0; i < t.dim; ++i) out << ',' << format_double(row.x(i));
    out << '\n';
  }
}

void write_round_csv(const std::vector<AgentRow>& rows, std::ostream& out) {
  out << "iter,agent_id,objective,aug_lagrangian,potential,stat_residual_inf,feas_residual_inf,"
         "x\n";
  for (const auto& row : rows) {
    out << row.iter << ',' << row.agent_id << ',' << format_double(row.objective) << ','
        << format_double(row.aug_lagrangian) << ',' << format_double(row.potential) << ','
        << format_double(row.stat_residual_inf) << ',' << format_double(row.feas_residual_inf)
        << ',' << format_double(row.x) << '\n';
  }
}

}  // namespace gpda
