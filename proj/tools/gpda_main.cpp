#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpda/config.hpp"
#include "gpda/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

gpda::ExperimentConfig load_config(const std::string& path,
                                   const std::vector<std::string>& overrides) {
  gpda::ExperimentConfig cfg = gpda::parse_config_file(path);
  for (const std::string& kv : overrides) gpda::apply_override(cfg, kv);
  return cfg;
}

void print_report(const gpda::RunReport& report) {
  std::printf("%s  status=%s iters=%d objective=%.9g stat=%.3g feas=%.3g",
              report.directory.c_str(), report.status.c_str(), report.iterations,
              report.final_objective, report.final_stat_residual, report.final_feas_residual);
  if (!report.verdict.empty()) std::printf(" verdict=%s", report.verdict.c_str());
  std::printf("\n");
}

// "a..b" with a <= b, both unsigned decimal.
void parse_seed_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
  const std::size_t sep = text.find("..");
  if (sep == std::string::npos || sep == 0 || sep + 2 >= text.size())
    throw gpda::ConfigError("seed range must look like a..b");
  const auto parse = [&](const std::string& part) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(part, &used);
    } catch (const std::exception&) {
      throw gpda::ConfigError("bad seed '" + part + "'");
    }
    if (used != part.size()) throw gpda::ConfigError("bad seed '" + part + "'");
    return v;
  };
  lo = parse(text.substr(0, sep));
  hi = parse(text.substr(sep + 2));
  if (lo > hi) throw gpda::ConfigError("seed range must satisfy a <= b");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual first-order solver for linearly constrained problems"};
  app.require_subcommand(1);

  std::string run_config, sweep_config, spectrum_config, classify_path, seeds_text;
  std::vector<std::string> run_sets, sweep_sets, spectrum_sets;

  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment from a config file");
  run_cmd->add_option("config", run_config, "config file")->required();
  run_cmd->add_option("--set", run_sets, "override key=value (repeatable)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per seed");
  sweep_cmd->add_option("config", sweep_config, "config file")->required();
  sweep_cmd->add_option("--seeds", seeds_text, "seed range a..b")->required();
  sweep_cmd->add_option("--set", sweep_sets, "override key=value (repeatable)");

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Classify the final iterate of a trajectory.csv");
  classify_cmd->add_option("trajectory", classify_path, "trajectory.csv path")->required();

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Eigenvalues and instability certificate for a config");
  spectrum_cmd->add_option("config", spectrum_config, "config file")->required();
  spectrum_cmd->add_option("--set", spectrum_sets, "override key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      print_report(gpda::run_experiment(load_config(run_config, run_sets)));
    } else if (sweep_cmd->parsed()) {
      std::uint64_t lo = 0, hi = 0;
      parse_seed_range(seeds_text, lo, hi);
      const auto reports =
          gpda::sweep_experiment(load_config(sweep_config, sweep_sets), lo, hi);
      for (const auto& report : reports) print_report(report);
    } else if (classify_cmd->parsed()) {
      const gpda::ClassifyReport report = gpda::classify_trajectory_file(classify_path);
      std::printf("iter=%d verdict=%s stat=%.3g feas=%.3g curvature=%.9g sigma=%.9g null_dim=%lld\n",
                  report.iter, report.verdict.c_str(), report.stat_residual,
                  report.feas_residual, report.min_projected_curvature, report.sigma,
                  report.null_dim);
    } else if (spectrum_cmd->parsed()) {
      print_report(gpda::run_spectrum(load_config(spectrum_config, spectrum_sets)));
    }
  } catch (const gpda::ConfigError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitRuntime;
  }
  return kExitOk;
}
