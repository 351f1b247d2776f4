#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace gpda {

/// Configuration or usage problem: malformed file, unknown key, bad value.
/// Distinct from std::runtime_error so the CLI can map it to the usage exit
/// code instead of the numerical-failure one.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed experiment description. Scalars with an accompanying *_auto flag
/// accept the literal value "auto" in the file; finalize_config resolves the
/// remaining experiment-specific defaults (marked -1 here).
struct ExperimentConfig {
  std::string experiment;  ///< saddle2d | randomq | consensus_net | consensus_star | spectral_cert
  std::uint64_t seed = 0;

  int n = -1;  ///< primal dimension (randomq, spectral_cert); fixed 2 for saddle2d
  int m = -1;  ///< constraint rows (randomq)

  bool rho_auto = true;
  double rho = 0.0;
  bool beta_auto = true;
  double beta = 0.0;
  bool tau_auto = true;
  double tau = 0.0;

  std::string init = "origin_perturbed";  ///< origin | origin_perturbed | gaussian
  double init_scale = -1.0;               ///< -1: 1e-3 for origin_perturbed, 1 for gaussian

  int max_iters = 100000;
  double stat_tol = 1e-6;
  double feas_tol = 1e-6;

  std::string graph = "path";  ///< path | ring | random (consensus_net)
  int agents = -1;             ///< node/worker count for the consensus experiments
  double edge_prob = 0.5;      ///< random graph density
  int rounds = 200;            ///< synchronous rounds for the consensus experiments

  std::string out = "out";  ///< output directory, resolved against the output root
};

/// Reads "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Unknown keys, duplicate keys, and malformed values raise ConfigError with
/// the line number. Does not fill experiment defaults; see finalize_config.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Applies one "key=value" assignment on top of a parsed config (CLI
/// overrides). Same validation as the file parser.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// Checks cross-field constraints and fills the experiment-specific defaults
/// (n, m, agents, init_scale). Raises ConfigError when the experiment is
/// missing or a value is out of range for its experiment.
void finalize_config(ExperimentConfig& cfg);

/// Renders the fully resolved configuration, one key per line in sorted key
/// order, numbers in round-trip precision. parse_config accepts the output.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace gpda
