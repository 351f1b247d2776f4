#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpda/config.hpp"

namespace gpda {

/// Filesystem outcome of one experiment run plus the headline numbers for the
/// CLI to print. Full detail lives in the files under `directory`.
struct RunReport {
  std::string directory;
  std::string status;  ///< converged | iteration_limit | diverged | completed
  int iterations = 0;
  double final_objective = 0.0;
  double final_stat_residual = 0.0;
  double final_feas_residual = 0.0;
  std::string verdict;  ///< classification of the final point, when computed
  double rho = 0.0;
  double beta = 0.0;
};

/// Resolves a configured output directory against the GPDA_OUTPUT_ROOT
/// environment variable; absolute paths pass through unchanged.
std::string resolve_output_dir(const std::string& out);

/// Runs one experiment into its output directory. Always writes
/// trajectory.csv, config.resolved (fully resolved parameter values), and
/// summary.json; saddle2d adds contour.csv, the consensus kinds add
/// rounds.csv, spectral_cert adds spectrum.json. Reruns with the same config
/// rewrite byte-identical CSV bodies; timestamps live only in summary.json.
RunReport run_experiment(const ExperimentConfig& cfg);

/// Seed sweep: run_experiment for every seed in [seed_lo, seed_hi], each into
/// <out>/seed_<k>/, fanned out over a bounded thread pool.
std::vector<RunReport> sweep_experiment(const ExperimentConfig& base, std::uint64_t seed_lo,
                                        std::uint64_t seed_hi);

/// Spectrum analysis of the config's instance (saddle2d or randomq shapes):
/// solve, classify the final point, and emit its linearized-map eigenvalues
/// plus the instability certificate into spectrum.json.
RunReport run_spectrum(const ExperimentConfig& cfg);

struct ClassifyReport {
  int iter = 0;
  std::string verdict;
  double stat_residual = 0.0;
  double feas_residual = 0.0;
  double min_projected_curvature = 0.0;  ///< +infinity when the null space is trivial
  double sigma = 0.0;
  long long null_dim = 0;
  double gamma_certificate = -1.0;
};

/// Classifies the last recorded iterate of a trajectory.csv, rebuilding the
/// instance from the config.resolved written next to it.
ClassifyReport classify_trajectory_file(const std::string& trajectory_csv);

}  // namespace gpda
