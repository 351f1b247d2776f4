#include "gpda/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "gpda/distributed.hpp"
#include "gpda/gadmm.hpp"
#include "gpda/gpda.hpp"
#include "gpda/graph.hpp"
#include "gpda/instances.hpp"
#include "gpda/linalg.hpp"
#include "gpda/rng.hpp"
#include "gpda/spectral.hpp"
#include "gpda/stationarity.hpp"
#include "gpda/trajectory.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gpda {

namespace {

// Distinct seeds for the coefficient and initial-point draws so they do not
// replay the instance stream.
constexpr std::uint64_t kCoeffStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kInitStream = 0xbf58476d1ce4e5b9ULL;

std::string iso_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << body;
}

Eigen::VectorXd initial_point(const ExperimentConfig& cfg, Eigen::Index n) {
  if (cfg.init == "origin") return Eigen::VectorXd::Zero(n);
  Rng rng(cfg.seed ^ kInitStream);
  return cfg.init_scale * rng.gaussian_vector(n);
}

struct BuiltSingle {
  ConstrainedProblem problem;
  double tau;
  BuiltSingle(ConstrainedProblem p, double t) : problem(std::move(p)), tau(t) {}
};

BuiltSingle build_single_block(const ExperimentConfig& cfg) {
  if (cfg.experiment == "saddle2d" ||
      (cfg.experiment == "spectral_cert" && cfg.n == 2 && cfg.m == 1)) {
    const double tau = cfg.tau_auto ? 1.05 : cfg.tau;
    return {two_var_saddle_instance(1.0, tau), tau};
  }
  const Eigen::MatrixXd Q = random_indefinite_q(cfg.n, cfg.seed);
  const double tau = cfg.tau_auto ? default_quartic_tau(Q) : cfg.tau;
  ObjectiveOracle f = quartic_objective(Q, tau);
  Rng coeff(cfg.seed ^ kCoeffStream);
  const Eigen::MatrixXd A = coeff.gaussian_matrix(cfg.m, cfg.n);
  const Eigen::VectorXd b = coeff.gaussian_vector(cfg.m);
  return {ConstrainedProblem(std::move(f), A, b), tau};
}

GpdaParams resolve_gpda_params(const ConstrainedProblem& p, const ExperimentConfig& cfg) {
  if (cfg.rho_auto && cfg.beta_auto) return select_parameters(p);
  GpdaParams params;
  if (cfg.rho_auto) {
    const double s = smallest_nonzero_eigenvalue(p.A.transpose() * p.A);
    params.rho = 16.0 * p.f.grad_lipschitz / s;
  } else {
    params.rho = cfg.rho;
  }
  params.beta = cfg.beta_auto ? descent_beta(p, params.rho) : cfg.beta;
  return params;
}

Graph consensus_graph(const ExperimentConfig& cfg) {
  if (cfg.graph == "path") return path_graph(cfg.agents);
  if (cfg.graph == "ring") return ring_graph(cfg.agents);
  return random_connected_graph(cfg.agents, cfg.edge_prob, cfg.seed);
}

std::vector<ObjectiveOracle> consensus_locals(const ExperimentConfig& cfg, int count) {
  Rng coeff(cfg.seed ^ kCoeffStream);
  std::vector<ObjectiveOracle> locals;
  locals.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Eigen::MatrixXd Q(1, 1);
    Q(0, 0) = coeff.gaussian();
    const double tau = cfg.tau_auto ? default_quartic_tau(Q) : cfg.tau;
    locals.push_back(quartic_objective(Q, tau));
  }
  return locals;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json classification_json(const Classification& cls) {
  json j;
  j["verdict"] = to_string(cls.verdict);
  j["stat_residual"] = finite_or_null(cls.first_order.stat_residual_inf);
  j["feas_residual"] = finite_or_null(cls.first_order.feas_residual_inf);
  j["min_projected_curvature"] = finite_or_null(cls.min_projected_curvature);
  j["sigma"] = finite_or_null(cls.sigma);
  j["null_dim"] = static_cast<long long>(cls.null_dim);
  j["gamma_certificate"] = cls.gamma_certificate;
  if (cls.witness.size() > 0) {
    json w = json::array();
    for (Eigen::Index i = 0; i < cls.witness.size(); ++i) w.push_back(cls.witness(i));
    j["witness"] = w;
  }
  return j;
}

json base_summary(const ExperimentConfig& cfg, double rho, double beta, double c,
                  const std::string& status) {
  json s;
  s["experiment"] = cfg.experiment;
  s["seed"] = cfg.seed;
  s["status"] = status;
  s["params"] = {{"rho", rho}, {"beta", beta}, {"c", c}};
  s["generated_at"] = iso_timestamp();
  return s;
}

void fill_final(json& summary, const Trajectory& traj) {
  if (traj.rows.empty()) return;
  const TrajectoryRow& last = traj.rows.back();
  summary["iterations"] = last.iter;
  summary["final"] = {{"objective", finite_or_null(last.objective)},
                      {"stat_residual", finite_or_null(last.stat_residual_inf)},
                      {"feas_residual", finite_or_null(last.feas_residual_inf)}};
}

void fill_report(RunReport& report, const Trajectory& traj) {
  if (traj.rows.empty()) return;
  const TrajectoryRow& last = traj.rows.back();
  report.iterations = last.iter;
  report.final_objective = last.objective;
  report.final_stat_residual = last.stat_residual_inf;
  report.final_feas_residual = last.feas_residual_inf;
}

void write_trajectory_file(const fs::path& dir, const Trajectory& traj) {
  std::ofstream out(dir / "trajectory.csv");
  if (!out) throw std::runtime_error("cannot write '" + (dir / "trajectory.csv").string() + "'");
  write_trajectory_csv(traj, out);
}

void write_rounds_file(const fs::path& dir, const std::vector<AgentRow>& rows) {
  std::ofstream out(dir / "rounds.csv");
  if (!out) throw std::runtime_error("cannot write '" + (dir / "rounds.csv").string() + "'");
  write_round_csv(rows, out);
}

void write_resolved_config(const fs::path& dir, ExperimentConfig cfg, double rho, double beta) {
  cfg.rho = rho;
  cfg.rho_auto = false;
  cfg.beta = beta;
  cfg.beta_auto = false;
  write_text(dir / "config.resolved", render_config(cfg));
}

void write_contour(const ConstrainedProblem& p, const fs::path& dir) {
  std::ofstream out(dir / "contour.csv");
  if (!out) throw std::runtime_error("cannot write '" + (dir / "contour.csv").string() + "'");
  out << "x1,x2,objective\n";
  Eigen::VectorXd v(2);
  for (int i = 0; i <= 200; ++i) {
    v(0) = -2.5 + 5.0 * i / 200.0;
    for (int j = 0; j <= 200; ++j) {
      v(1) = -2.5 + 5.0 * j / 200.0;
      out << format_double(v(0)) << ',' << format_double(v(1)) << ','
          << format_double(p.f.value(v)) << '\n';
    }
  }
}

void write_spectrum(const ConstrainedProblem& p, const Eigen::VectorXd& x,
                    const GpdaParams& params, const Classification& cls, const fs::path& dir) {
  const Eigen::MatrixXd H = p.f.hessian(x);
  const GpdaLinearization lin = gpda_linearization(H, p.A, params.rho, params.beta);
  const Eigen::VectorXcd eigs = general_real_eigenvalues(gpda_iteration_matrix(lin));
  json spec;
  spec["verdict"] = to_string(cls.verdict);
  spec["sigma"] = finite_or_null(cls.sigma);
  spec["min_projected_curvature"] = finite_or_null(cls.min_projected_curvature);
  spec["null_dim"] = static_cast<long long>(cls.null_dim);
  json values = json::array();
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    values.push_back({eigs(i).real(), eigs(i).imag()});
  spec["eigenvalues"] = values;
  json unstable;
  unstable["found"] = false;
  if (cls.verdict == StationarityClass::strict_saddle) {
    try {
      const UnstableMode mode = unstable_eigenvalue_gpda(H, p.A, params.rho, params.beta);
      unstable["found"] = mode.found;
      if (mode.found) {
        unstable["delta"] = mode.delta;
        unstable["mu"] = mode.mu;
        unstable["eigensolve_gap"] = mode.eigensolve_gap;
      }
    } catch (const std::invalid_argument& err) {
      spec["certificate_error"] = err.what();
    }
  }
  spec["unstable"] = unstable;
  write_text(dir / "spectrum.json", spec.dump(2) + "\n");
}

RunReport run_single_block(const ExperimentConfig& cfg, const fs::path& dir) {
  const BuiltSingle built = build_single_block(cfg);
  const ConstrainedProblem& p = built.problem;
  const GpdaParams params = resolve_gpda_params(p, cfg);

  SolveOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.stat_tol = cfg.stat_tol;
  opts.feas_tol = cfg.feas_tol;
  const GpdaResult result =
      run_gpda(p, initial_point(cfg, p.f.dim), Eigen::VectorXd::Zero(p.A.rows()), params, opts);

  write_trajectory_file(dir, result.trajectory);
  if (cfg.experiment == "saddle2d") write_contour(p, dir);

  RunReport report;
  report.directory = dir.string();
  report.status = to_string(result.status);
  report.rho = params.rho;
  report.beta = params.beta;
  fill_report(report, result.trajectory);

  json summary = base_summary(cfg, params.rho, params.beta, params.c, report.status);
  fill_final(summary, result.trajectory);
  json files = json::array({"trajectory.csv", "config.resolved"});
  if (cfg.experiment == "saddle2d") files.push_back("contour.csv");

  if (result.state.x.allFinite()) {
    const Classification cls = classify_stationary_point(p, result.state.x);
    summary["classification"] = classification_json(cls);
    report.verdict = to_string(cls.verdict);
    if (cfg.experiment == "spectral_cert") {
      write_spectrum(p, result.state.x, params, cls, dir);
      files.push_back("spectrum.json");
    }
  }

  ExperimentConfig resolved = cfg;
  resolved.tau = built.tau;
  resolved.tau_auto = false;
  write_resolved_config(dir, resolved, params.rho, params.beta);

  files.push_back("summary.json");
  summary["files"] = files;
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return report;
}

RunReport run_consensus_net(const ExperimentConfig& cfg, const fs::path& dir) {
  const Graph graph = consensus_graph(cfg);
  const std::vector<ObjectiveOracle> locals = consensus_locals(cfg, cfg.agents);
  const ConstrainedProblem central = network_consensus_problem(graph, locals);
  const GpdaParams params = resolve_gpda_params(central, cfg);

  const Eigen::VectorXd x0 = initial_point(cfg, cfg.agents);
  const DistributedRun run =
      run_distributed(graph, locals, params.rho, params.beta, x0, cfg.rounds);

  // Global trajectory of the stacked iterate, with the multiplier recovered
  // from its own recursion (lambda^0 = 0, b = 0).
  Trajectory traj;
  traj.dim = cfg.agents;
  std::vector<AgentRow> agent_rows;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(central.A.rows());
  Eigen::VectorXd x_prev = x0;
  for (int r = 0; r < run.distributed_iterates.rows(); ++r) {
    const Eigen::VectorXd x = run.distributed_iterates.row(r).transpose();
    const bool finite = x.allFinite();
    if (r >= 1 && finite) lambda += params.rho * (central.A * x);
    TrajectoryRow row;
    row.iter = r;
    row.objective = central.f.value(x);
    row.aug_lagrangian = augmented_lagrangian(central, x, lambda, params.rho);
    row.potential = gpda_potential(central, params, x, x_prev, lambda);
    row.stat_residual_inf =
        (central.f.gradient(x) + central.A.transpose() * lambda).lpNorm<Eigen::Infinity>();
    row.feas_residual_inf = (central.A * x).lpNorm<Eigen::Infinity>();
    row.x = x;
    traj.rows.push_back(row);
    for (int i = 0; i < cfg.agents; ++i) {
      AgentRow arow;
      arow.iter = r;
      arow.agent_id = i;
      arow.objective = row.objective;
      arow.aug_lagrangian = row.aug_lagrangian;
      arow.potential = row.potential;
      arow.stat_residual_inf = row.stat_residual_inf;
      arow.feas_residual_inf = row.feas_residual_inf;
      arow.x = x(i);
      agent_rows.push_back(arow);
    }
    if (!finite) break;
    x_prev = x;
  }

  write_trajectory_file(dir, traj);
  write_rounds_file(dir, agent_rows);

  RunReport report;
  report.directory = dir.string();
  report.status = run.distributed_divergence_round >= 0 ? "diverged" : "completed";
  report.rho = params.rho;
  report.beta = params.beta;
  fill_report(report, traj);

  json summary = base_summary(cfg, params.rho, params.beta, params.c, report.status);
  fill_final(summary, traj);
  summary["consensus"] = {
      {"max_relative_deviation", run.max_relative_deviation},
      {"distributed_divergence_round", run.distributed_divergence_round},
      {"centralized_divergence_round", run.centralized_divergence_round},
      {"final_consensus_error", finite_or_null(run.logs.back().consensus_error)}};
  const Eigen::VectorXd x_final = traj.rows.back().x;
  if (x_final.allFinite()) {
    const Classification cls = classify_stationary_point(central, x_final);
    summary["classification"] = classification_json(cls);
    report.verdict = to_string(cls.verdict);
  }

  write_resolved_config(dir, cfg, params.rho, params.beta);
  summary["files"] = json::array({"trajectory.csv", "rounds.csv", "config.resolved", "summary.json"});
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return report;
}

RunReport run_consensus_star(const ExperimentConfig& cfg, const fs::path& dir) {
  std::vector<ObjectiveOracle> members = consensus_locals(cfg, cfg.agents + 1);
  const ObjectiveOracle master = members.back();
  members.pop_back();
  const std::vector<ObjectiveOracle>& workers = members;
  const TwoBlockProblem central = star_consensus_problem(workers, master);

  GadmmParams params;
  params.rho = cfg.rho_auto ? 1.0 : cfg.rho;
  if (cfg.beta_auto) {
    // Keep both per-block descent margins with the usual 1.05 slack; the full
    // coupled condition system has no solution for consensus geometry.
    const double gram = std::max(spectral_norm_symmetric(central.A.transpose() * central.A),
                                 spectral_norm_symmetric(central.B.transpose() * central.B));
    params.beta =
        1.05 * (params.rho * gram + central.f.grad_lipschitz + central.g.grad_lipschitz);
  } else {
    params.beta = cfg.beta;
  }

  const Eigen::VectorXd z0 = initial_point(cfg, cfg.agents + 1);
  const Eigen::VectorXd x0 = z0.head(cfg.agents);
  const double y0 = z0(cfg.agents);
  const StarRun run =
      run_star(workers, master, params.rho, params.beta, x0, y0, cfg.rounds);

  Trajectory traj;
  traj.dim = cfg.agents + 1;
  std::vector<AgentRow> agent_rows;
  const int total_rows = static_cast<int>(run.worker_iterates.rows());
  for (int r = 0; r < total_rows; ++r) {
    TwoBlockState state;
    state.x = run.worker_iterates.row(r).transpose();
    state.x_prev = run.worker_iterates.row(std::max(0, r - 1)).transpose();
    state.y = Eigen::VectorXd::Constant(1, run.master_iterates(r));
    state.y_prev = Eigen::VectorXd::Constant(1, run.master_iterates(std::max(0, r - 1)));
    state.lambda = run.multiplier_iterates.row(r).transpose();
    state.lambda_prev = run.multiplier_iterates.row(std::max(0, r - 1)).transpose();
    const bool finite = state.x.allFinite() && state.y.allFinite() && state.lambda.allFinite();

    TrajectoryRow row;
    row.iter = r;
    row.objective = central.f.value(state.x) + central.g.value(state.y);
    row.aug_lagrangian = augmented_lagrangian(central, state.x, state.y, state.lambda, params.rho);
    row.potential = gadmm_potential(central, params, state);
    const double stat_x = (central.f.gradient(state.x) + central.A.transpose() * state.lambda)
                              .lpNorm<Eigen::Infinity>();
    const double stat_y = (central.g.gradient(state.y) + central.B.transpose() * state.lambda)
                              .lpNorm<Eigen::Infinity>();
    row.stat_residual_inf = std::max(stat_x, stat_y);
    row.feas_residual_inf = constraint_residual(central, state.x, state.y).lpNorm<Eigen::Infinity>();
    row.x.resize(cfg.agents + 1);
    row.x << state.x, state.y(0);
    traj.rows.push_back(row);

    for (int i = 0; i <= cfg.agents; ++i) {
      AgentRow arow;
      arow.iter = r;
      arow.agent_id = i;
      arow.objective = row.objective;
      arow.aug_lagrangian = row.aug_lagrangian;
      arow.potential = row.potential;
      arow.stat_residual_inf = row.stat_residual_inf;
      arow.feas_residual_inf = row.feas_residual_inf;
      arow.x = i < cfg.agents ? state.x(i) : state.y(0);
      agent_rows.push_back(arow);
    }
    if (!finite) break;
  }

  write_trajectory_file(dir, traj);
  write_rounds_file(dir, agent_rows);

  const bool ended_finite = traj.rows.back().x.allFinite();
  RunReport report;
  report.directory = dir.string();
  report.status = ended_finite ? "completed" : "diverged";
  report.rho = params.rho;
  report.beta = params.beta;
  fill_report(report, traj);

  json summary = base_summary(cfg, params.rho, params.beta, params.c, report.status);
  fill_final(summary, traj);
  summary["consensus"] = {{"max_relative_deviation", run.max_relative_deviation}};
  if (ended_finite) {
    const Eigen::VectorXd xs = traj.rows.back().x.head(cfg.agents);
    const Eigen::VectorXd ys = traj.rows.back().x.tail(1);
    const Classification cls = classify_stationary_point(central, xs, ys);
    summary["classification"] = classification_json(cls);
    report.verdict = to_string(cls.verdict);
  }

  write_resolved_config(dir, cfg, params.rho, params.beta);
  summary["files"] = json::array({"trajectory.csv", "rounds.csv", "config.resolved", "summary.json"});
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return report;
}

}  // namespace

std::string resolve_output_dir(const std::string& out) {
  fs::path path(out);
  if (path.is_absolute()) return path.string();
  const char* root = std::getenv("GPDA_OUTPUT_ROOT");
  if (root != nullptr && root[0] != '\0') return (fs::path(root) / path).string();
  return path.string();
}

RunReport run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  finalize_config(cfg);
  const fs::path dir(resolve_output_dir(cfg.out));
  fs::create_directories(dir);
  if (cfg.experiment == "consensus_net") return run_consensus_net(cfg, dir);
  if (cfg.experiment == "consensus_star") return run_consensus_star(cfg, dir);
  return run_single_block(cfg, dir);
}

std::vector<RunReport> sweep_experiment(const ExperimentConfig& base, std::uint64_t seed_lo,
                                        std::uint64_t seed_hi) {
  if (seed_lo > seed_hi) throw ConfigError("seed range is empty");
  const std::uint64_t count = seed_hi - seed_lo + 1;
  if (count == 0 || count > 10000) throw ConfigError("seed sweep too large (limit 10000)");

  std::vector<RunReport> reports(count);
  const std::uint64_t pool = std::max(1u, std::thread::hardware_concurrency());
  for (std::uint64_t start = 0; start < count; start += pool) {
    const std::uint64_t stop = std::min(count, start + pool);
    std::vector<std::future<RunReport>> batch;
    for (std::uint64_t k = start; k < stop; ++k) {
      ExperimentConfig cfg = base;
      cfg.seed = seed_lo + k;
      cfg.out = base.out + "/seed_" + std::to_string(cfg.seed);
      batch.push_back(std::async(std::launch::async, [cfg] { return run_experiment(cfg); }));
    }
    for (std::uint64_t k = start; k < stop; ++k) reports[k] = batch[k - start].get();
  }
  return reports;
}

RunReport run_spectrum(const ExperimentConfig& cfg_in) {
  if (cfg_in.experiment == "consensus_net" || cfg_in.experiment == "consensus_star")
    throw ConfigError("spectrum applies to saddle2d or randomq shaped configs");
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = "spectral_cert";
  return run_experiment(cfg);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_csv_number(const std::string& field, const std::string& path) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || field.empty())
    throw ConfigError("malformed numeric field '" + field + "' in '" + path + "'");
  return v;
}

}  // namespace

ClassifyReport classify_trajectory_file(const std::string& trajectory_csv) {
  const fs::path traj_path(trajectory_csv);
  std::ifstream in(traj_path);
  if (!in) throw ConfigError("cannot open trajectory '" + trajectory_csv + "'");

  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty trajectory '" + trajectory_csv + "'");
  const std::vector<std::string> columns = split_csv_line(header);
  if (columns.size() >= 2 && columns[1] == "agent_id")
    throw ConfigError("'" + trajectory_csv + "' is a round log; classify the trajectory.csv");
  if (columns.size() < 7 || columns[0] != "iter")
    throw ConfigError("'" + trajectory_csv +
                      "' has no state columns (dimension above 32 is not recorded)");
  const std::size_t dim = columns.size() - 6;

  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) throw ConfigError("trajectory '" + trajectory_csv + "' has no data rows");
  const std::vector<std::string> fields = split_csv_line(last);
  if (fields.size() != columns.size())
    throw ConfigError("ragged row in trajectory '" + trajectory_csv + "'");

  ExperimentConfig cfg = parse_config_file((traj_path.parent_path() / "config.resolved").string());
  finalize_config(cfg);

  Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    x(static_cast<Eigen::Index>(i)) = parse_csv_number(fields[6 + i], trajectory_csv);

  Classification cls;
  if (cfg.experiment == "consensus_net") {
    const ConstrainedProblem central =
        network_consensus_problem(consensus_graph(cfg), consensus_locals(cfg, cfg.agents));
    if (central.f.dim != x.size())
      throw ConfigError("trajectory dimension does not match the configured instance");
    cls = classify_stationary_point(central, x);
  } else if (cfg.experiment == "consensus_star") {
    std::vector<ObjectiveOracle> members = consensus_locals(cfg, cfg.agents + 1);
    const ObjectiveOracle master = members.back();
    members.pop_back();
    const TwoBlockProblem central = star_consensus_problem(members, master);
    if (central.f.dim + 1 != x.size())
      throw ConfigError("trajectory dimension does not match the configured instance");
    cls = classify_stationary_point(central, x.head(x.size() - 1), x.tail(1));
  } else {
    const BuiltSingle built = build_single_block(cfg);
    if (built.problem.f.dim != x.size())
      throw ConfigError("trajectory dimension does not match the configured instance");
    cls = classify_stationary_point(built.problem, x);
  }

  ClassifyReport report;
  report.iter = static_cast<int>(parse_csv_number(fields[0], trajectory_csv));
  report.verdict = to_string(cls.verdict);
  report.stat_residual = cls.first_order.stat_residual_inf;
  report.feas_residual = cls.first_order.feas_residual_inf;
  report.min_projected_curvature = cls.min_projected_curvature;
  report.sigma = cls.sigma;
  report.null_dim = static_cast<long long>(cls.null_dim);
  report.gamma_certificate = cls.gamma_certificate;
  return report;
}

}  // namespace gpda
