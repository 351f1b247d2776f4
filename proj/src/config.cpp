#include "gpda/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "gpda/trajectory.hpp"

namespace gpda {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& where, const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE ||
      !std::isfinite(v))
    throw ConfigError(where + ": key '" + key + "' expects a number, got '" + value + "'");
  return v;
}

long long parse_integer(const std::string& where, const std::string& key,
                        const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw ConfigError(where + ": key '" + key + "' expects an integer, got '" + value + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& where, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  if (!value.empty() && value[0] == '-')
    throw ConfigError(where + ": key 'seed' expects a nonnegative integer, got '" + value + "'");
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw ConfigError(where + ": key 'seed' expects a nonnegative integer, got '" + value + "'");
  return static_cast<std::uint64_t>(v);
}

int parse_positive_int(const std::string& where, const std::string& key,
                       const std::string& value) {
  const long long v = parse_integer(where, key, value);
  if (v < 1 || v > 1000000000)
    throw ConfigError(where + ": key '" + key + "' must be a positive integer, got '" + value +
                      "'");
  return static_cast<int>(v);
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value,
             const std::string& where) {
  if (key == "experiment") {
    if (value != "saddle2d" && value != "randomq" && value != "consensus_net" &&
        value != "consensus_star" && value != "spectral_cert")
      throw ConfigError(where + ": unknown experiment '" + value + "'");
    cfg.experiment = value;
  } else if (key == "seed") {
    cfg.seed = parse_seed(where, value);
  } else if (key == "n") {
    cfg.n = parse_positive_int(where, key, value);
  } else if (key == "m") {
    cfg.m = parse_positive_int(where, key, value);
  } else if (key == "rho" || key == "beta" || key == "tau") {
    bool is_auto = value == "auto";
    double v = 0.0;
    if (!is_auto) {
      v = parse_double(where, key, value);
      if (v <= 0.0)
        throw ConfigError(where + ": key '" + key + "' must be positive or 'auto'");
    }
    if (key == "rho") {
      cfg.rho_auto = is_auto;
      cfg.rho = v;
    } else if (key == "beta") {
      cfg.beta_auto = is_auto;
      cfg.beta = v;
    } else {
      cfg.tau_auto = is_auto;
      cfg.tau = v;
    }
  } else if (key == "init") {
    if (value != "origin" && value != "origin_perturbed" && value != "gaussian")
      throw ConfigError(where + ": unknown init kind '" + value + "'");
    cfg.init = value;
  } else if (key == "init_scale") {
    const double v = parse_double(where, key, value);
    if (v < 0.0) throw ConfigError(where + ": key 'init_scale' must be nonnegative");
    cfg.init_scale = v;
  } else if (key == "max_iters") {
    cfg.max_iters = parse_positive_int(where, key, value);
  } else if (key == "stat_tol" || key == "feas_tol") {
    const double v = parse_double(where, key, value);
    if (v <= 0.0) throw ConfigError(where + ": key '" + key + "' must be positive");
    (key == "stat_tol" ? cfg.stat_tol : cfg.feas_tol) = v;
  } else if (key == "graph") {
    if (value != "path" && value != "ring" && value != "random")
      throw ConfigError(where + ": unknown graph kind '" + value + "'");
    cfg.graph = value;
  } else if (key == "agents") {
    cfg.agents = parse_positive_int(where, key, value);
  } else if (key == "edge_prob") {
    const double v = parse_double(where, key, value);
    if (v <= 0.0 || v > 1.0)
      throw ConfigError(where + ": key 'edge_prob' must lie in (0, 1]");
    cfg.edge_prob = v;
  } else if (key == "rounds") {
    cfg.rounds = parse_positive_int(where, key, value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError(where + ": key 'out' must not be empty");
    cfg.out = value;
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (value.empty()) throw ConfigError(where + ": key '" + key + "' has no value");
    if (!seen.insert(key).second)
      throw ConfigError(where + ": duplicate key '" + key + "'");
    set_key(cfg, key, value, where);
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty())
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  set_key(cfg, key, value, "override '" + assignment + "'");
}

void finalize_config(ExperimentConfig& cfg) {
  if (cfg.experiment.empty()) throw ConfigError("missing required key 'experiment'");

  if (cfg.experiment == "saddle2d") {
    if (cfg.n != -1 && cfg.n != 2)
      throw ConfigError("saddle2d is a 2-variable experiment; drop 'n' or set it to 2");
    if (cfg.m != -1 && cfg.m != 1)
      throw ConfigError("saddle2d has a single constraint; drop 'm' or set it to 1");
    cfg.n = 2;
    cfg.m = 1;
  } else if (cfg.experiment == "randomq" || cfg.experiment == "spectral_cert") {
    if (cfg.n == -1) cfg.n = cfg.experiment == "randomq" ? 20 : 2;
    if (cfg.m == -1) cfg.m = cfg.experiment == "randomq" ? 5 : 1;
    if (cfg.m > cfg.n)
      throw ConfigError("'m' must not exceed 'n' (the constraint rows must stay feasible)");
  } else {
    if (cfg.agents == -1) cfg.agents = 3;
    if (cfg.experiment == "consensus_net" && cfg.graph == "ring" && cfg.agents < 3)
      throw ConfigError("a ring needs at least 3 agents");
  }

  if (cfg.init_scale < 0.0) {
    if (cfg.init == "origin_perturbed")
      cfg.init_scale = 1e-3;
    else if (cfg.init == "gaussian")
      cfg.init_scale = 1.0;
    else
      cfg.init_scale = 0.0;
  }
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto scalar = [&](const char* key, bool is_auto, double v) {
    out << key << " = " << (is_auto ? std::string("auto") : format_double(v)) << "\n";
  };
  if (cfg.agents >= 0) out << "agents = " << cfg.agents << "\n";
  scalar("beta", cfg.beta_auto, cfg.beta);
  out << "edge_prob = " << format_double(cfg.edge_prob) << "\n";
  out << "experiment = " << cfg.experiment << "\n";
  out << "feas_tol = " << format_double(cfg.feas_tol) << "\n";
  out << "graph = " << cfg.graph << "\n";
  out << "init = " << cfg.init << "\n";
  if (cfg.init_scale >= 0.0) out << "init_scale = " << format_double(cfg.init_scale) << "\n";
  if (cfg.m >= 0) out << "m = " << cfg.m << "\n";
  out << "max_iters = " << cfg.max_iters << "\n";
  if (cfg.n >= 0) out << "n = " << cfg.n << "\n";
  out << "out = " << cfg.out << "\n";
  scalar("rho", cfg.rho_auto, cfg.rho);
  out << "rounds = " << cfg.rounds << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "stat_tol = " << format_double(cfg.stat_tol) << "\n";
  scalar("tau", cfg.tau_auto, cfg.tau);
  return out.str();
}

}  // namespace gpda
