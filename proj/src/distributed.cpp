#include "gpda/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "gpda/gadmm.hpp"
#include "gpda/gpda.hpp"
#include "gpda/instances.hpp"

namespace gpda {

namespace {

double scalar_value(const ObjectiveOracle& f, double z) {
  Eigen::VectorXd v(1);
  v(0) = z;
  return f.value(v);
}

double scalar_gradient(const ObjectiveOracle& f, double z) {
  Eigen::VectorXd v(1);
  v(0) = z;
  return f.gradient(v)(0);
}

double relative_gap(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return (got - want).lpNorm<Eigen::Infinity>() /
         std::max(1.0, want.lpNorm<Eigen::Infinity>());
}

}  // namespace

DistributedGpda::DistributedGpda(const Graph& graph, std::vector<ObjectiveOracle> locals,
                                 double rho, double beta)
    : rho_(rho), beta_(beta) {
  if (!graph.connected())
    throw std::invalid_argument("DistributedGpda: graph must be connected");
  if (static_cast<int>(locals.size()) != graph.num_nodes)
    throw std::invalid_argument("DistributedGpda: one local objective per vertex required");
  if (rho <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("DistributedGpda: rho and beta must be positive");
  const auto adjacency = graph.adjacency();
  agents_.resize(locals.size());
  for (std::size_t i = 0; i < locals.size(); ++i) {
    if (locals[i].dim != 1 || !locals[i].value || !locals[i].gradient)
      throw std::invalid_argument("DistributedGpda: local objectives must be scalar");
    Agent& a = agents_[i];
    a.id = static_cast<int>(i);
    a.local = std::move(locals[i]);
    a.neighbors = adjacency[i];
    a.inbox_curr.assign(a.neighbors.size(), 0.0);
    a.inbox_prev.assign(a.neighbors.size(), 0.0);
  }
}

void DistributedGpda::exchange() {
  for (Agent& a : agents_) a.inbox_prev = a.inbox_curr;
  for (Agent& a : agents_)
    for (std::size_t k = 0; k < a.neighbors.size(); ++k)
      a.inbox_curr[k] = agents_[static_cast<std::size_t>(a.neighbors[k])].x_curr;
}

void DistributedGpda::initialize(const Eigen::VectorXd& x0) {
  if (x0.size() != static_cast<Eigen::Index>(agents_.size()))
    throw std::invalid_argument("DistributedGpda: x0 has the wrong dimension");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    agents_[i].x_curr = x0(static_cast<Eigen::Index>(i));
    agents_[i].x_prev = agents_[i].x_curr;
  }
  round_ = 0;
  exchange();
  // Bootstrap: the plain primal update with lambda^0 = 0, one exchange deep.
  std::vector<double> next(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const Agent& a = agents_[i];
    const double degree = static_cast<double>(a.neighbors.size());
    double lap = degree * a.x_curr;
    for (const double v : a.inbox_curr) lap -= v;
    next[i] = a.x_curr - (scalar_gradient(a.local, a.x_curr) + rho_ * lap) / beta_;
  }
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    agents_[i].x_prev = agents_[i].x_curr;
    agents_[i].x_curr = next[i];
  }
  round_ = 1;
}

RoundLog DistributedGpda::advance() {
  if (round_ < 1) throw std::logic_error("DistributedGpda: initialize before advancing");
  exchange();
  std::vector<double> next(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const Agent& a = agents_[i];
    const double degree = static_cast<double>(a.neighbors.size());
    double lap_curr = degree * a.x_curr;
    double lap_prev = degree * a.x_prev;
    for (const double v : a.inbox_curr) lap_curr -= v;
    for (const double v : a.inbox_prev) lap_prev -= v;
    next[i] = a.x_curr + (a.x_curr - a.x_prev) +
              (-scalar_gradient(a.local, a.x_curr) + scalar_gradient(a.local, a.x_prev) -
               2.0 * rho_ * lap_curr + rho_ * lap_prev) /
                  beta_;
  }
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    agents_[i].x_prev = agents_[i].x_curr;
    agents_[i].x_curr = next[i];
  }
  ++round_;
  return log_for_current();
}

RoundLog DistributedGpda::log_for_current() const {
  RoundLog log;
  log.round = round_;
  log.values = stacked();
  log.consensus_error = log.values.maxCoeff() - log.values.minCoeff();
  for (const Agent& a : agents_) log.objective += scalar_value(a.local, a.x_curr);
  return log;
}

Eigen::VectorXd DistributedGpda::stacked() const {
  Eigen::VectorXd x(static_cast<Eigen::Index>(agents_.size()));
  for (std::size_t i = 0; i < agents_.size(); ++i) x(static_cast<Eigen::Index>(i)) = agents_[i].x_curr;
  return x;
}

bool DistributedGpda::values_finite() const {
  return std::all_of(agents_.begin(), agents_.end(),
                     [](const Agent& a) { return std::isfinite(a.x_curr); });
}

void DistributedGpda::overwrite_value(int agent_id, double value) {
  if (agent_id < 0 || agent_id >= static_cast<int>(agents_.size()))
    throw std::invalid_argument("DistributedGpda: no such agent");
  agents_[static_cast<std::size_t>(agent_id)].x_curr = value;
}

DistributedRun run_distributed(const Graph& graph, const std::vector<ObjectiveOracle>& locals,
                               double rho, double beta, const Eigen::VectorXd& x0, int rounds) {
  if (rounds < 1) throw std::invalid_argument("run_distributed: needs at least one round");
  DistributedGpda sim(graph, std::vector<ObjectiveOracle>(locals), rho, beta);

  const ConstrainedProblem central = network_consensus_problem(graph, locals);
  const GpdaParams params{rho, beta, 0.0};
  PrimalDualState state;
  state.x = x0;
  state.x_prev = x0;
  state.lambda = Eigen::VectorXd::Zero(central.A.rows());

  DistributedRun run;
  const Eigen::Index n = x0.size();
  run.distributed_iterates.resize(rounds + 1, n);
  run.centralized_iterates.resize(rounds + 1, n);
  run.distributed_iterates.row(0) = x0.transpose();
  run.centralized_iterates.row(0) = x0.transpose();

  RoundLog log0;
  log0.round = 0;
  log0.values = x0;
  log0.consensus_error = x0.maxCoeff() - x0.minCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v(1);
    v(0) = x0(i);
    log0.objective += locals[static_cast<std::size_t>(i)].value(v);
  }
  run.logs.push_back(log0);

  sim.initialize(x0);
  run.logs.push_back(sim.log_for_current());
  run.distributed_iterates.row(1) = sim.stacked().transpose();
  state = gpda_step(central, state, params);
  run.centralized_iterates.row(1) = state.x.transpose();

  for (int r = 2; r <= rounds; ++r) {
    const bool dist_alive = run.distributed_divergence_round < 0;
    const bool cent_alive = run.centralized_divergence_round < 0;
    if (dist_alive) {
      run.logs.push_back(sim.advance());
      run.distributed_iterates.row(r) = sim.stacked().transpose();
    } else {
      run.distributed_iterates.row(r).setConstant(std::nan(""));
    }
    if (cent_alive) {
      state = gpda_step(central, state, params);
      run.centralized_iterates.row(r) = state.x.transpose();
    } else {
      run.centralized_iterates.row(r).setConstant(std::nan(""));
    }
    if (dist_alive && !sim.values_finite()) run.distributed_divergence_round = r;
    if (cent_alive && !state.x.allFinite()) run.centralized_divergence_round = r;
  }
  // Late check for a blow-up in the very first steps.
  for (int r = 1; r <= rounds && run.distributed_divergence_round < 0; ++r)
    if (!run.distributed_iterates.row(r).allFinite()) run.distributed_divergence_round = r;
  for (int r = 1; r <= rounds && run.centralized_divergence_round < 0; ++r)
    if (!run.centralized_iterates.row(r).allFinite()) run.centralized_divergence_round = r;

  for (int r = 0; r <= rounds; ++r) {
    const Eigen::VectorXd xd = run.distributed_iterates.row(r).transpose();
    const Eigen::VectorXd xc = run.centralized_iterates.row(r).transpose();
    if (!xd.allFinite() || !xc.allFinite()) break;
    run.max_relative_deviation = std::max(run.max_relative_deviation, relative_gap(xd, xc));
  }
  return run;
}

StarGadmm::StarGadmm(std::vector<ObjectiveOracle> workers, ObjectiveOracle master, double rho,
                     double beta)
    : workers_(std::move(workers)), master_(std::move(master)), rho_(rho), beta_(beta) {
  if (workers_.empty()) throw std::invalid_argument("StarGadmm: needs at least one worker");
  for (const ObjectiveOracle& w : workers_)
    if (w.dim != 1 || !w.value || !w.gradient)
      throw std::invalid_argument("StarGadmm: worker objectives must be scalar");
  if (master_.dim != 1 || !master_.value || !master_.gradient)
    throw std::invalid_argument("StarGadmm: master objective must be scalar");
  if (rho <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("StarGadmm: rho and beta must be positive");
}

void StarGadmm::initialize(const Eigen::VectorXd& x0, double y0) {
  if (x0.size() != static_cast<Eigen::Index>(workers_.size()))
    throw std::invalid_argument("StarGadmm: x0 has the wrong dimension");
  state_.x = x0;
  state_.y = y0;
  state_.lambda = Eigen::VectorXd::Zero(x0.size());
}

void StarGadmm::round(const std::vector<int>& worker_order) {
  const std::size_t n = workers_.size();
  if (state_.x.size() == 0) throw std::logic_error("StarGadmm: initialize before advancing");
  std::vector<int> order(n);
  if (worker_order.empty()) {
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  } else {
    if (worker_order.size() != n)
      throw std::invalid_argument("StarGadmm: worker_order must be a permutation");
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int w = worker_order[i];
      if (w < 0 || w >= static_cast<int>(n) || seen[static_cast<std::size_t>(w)])
        throw std::invalid_argument("StarGadmm: worker_order must be a permutation");
      seen[static_cast<std::size_t>(w)] = 1;
      order[i] = w;
    }
  }

  Eigen::VectorXd x_next(state_.x.size());
  for (const int i : order) {
    const double xi = state_.x(i);
    x_next(i) =
        xi - (scalar_gradient(workers_[static_cast<std::size_t>(i)], xi) + state_.lambda(i) +
              rho_ * (xi - state_.y)) /
                 beta_;
  }
  double pull = 0.0;
  for (Eigen::Index i = 0; i < x_next.size(); ++i)
    pull += state_.lambda(i) + rho_ * (x_next(i) - state_.y);
  const double y_next = state_.y - (scalar_gradient(master_, state_.y) - pull) / beta_;
  for (Eigen::Index i = 0; i < x_next.size(); ++i)
    state_.lambda(i) += rho_ * (x_next(i) - y_next);
  state_.x = x_next;
  state_.y = y_next;
}

bool StarGadmm::values_finite() const {
  return state_.x.allFinite() && std::isfinite(state_.y) && state_.lambda.allFinite();
}

StarRun run_star(const std::vector<ObjectiveOracle>& workers, const ObjectiveOracle& master,
                 double rho, double beta, const Eigen::VectorXd& x0, double y0, int rounds,
                 const std::vector<int>& worker_order) {
  if (rounds < 1) throw std::invalid_argument("run_star: needs at least one round");
  StarGadmm sim(std::vector<ObjectiveOracle>(workers), master, rho, beta);
  sim.initialize(x0, y0);

  const TwoBlockProblem central = star_consensus_problem(workers, master);
  const GadmmParams params{rho, beta, 0.0};
  TwoBlockState state;
  state.x = x0;
  state.x_prev = x0;
  state.y = Eigen::VectorXd::Constant(1, y0);
  state.y_prev = state.y;
  state.lambda = Eigen::VectorXd::Zero(x0.size());
  state.lambda_prev = state.lambda;

  const Eigen::Index n = x0.size();
  StarRun run;
  run.worker_iterates.resize(rounds + 1, n);
  run.master_iterates.resize(rounds + 1);
  run.multiplier_iterates.resize(rounds + 1, n);
  run.worker_iterates.row(0) = x0.transpose();
  run.master_iterates(0) = y0;
  run.multiplier_iterates.row(0).setZero();

  for (int r = 1; r <= rounds; ++r) {
    sim.round(worker_order);
    state = gadmm_step(central, state, params);
    run.worker_iterates.row(r) = sim.state().x.transpose();
    run.master_iterates(r) = sim.state().y;
    run.multiplier_iterates.row(r) = sim.state().lambda.transpose();

    Eigen::VectorXd got(2 * n + 1);
    got << sim.state().x, sim.state().y, sim.state().lambda;
    Eigen::VectorXd want(2 * n + 1);
    want << state.x, state.y(0), state.lambda;
    if (!got.allFinite() || !want.allFinite()) break;
    run.max_relative_deviation = std::max(run.max_relative_deviation, relative_gap(got, want));
  }
  return run;
}

}  // namespace gpda
