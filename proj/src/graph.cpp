#include "gpda/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gpda/rng.hpp"

namespace gpda {

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : num_nodes(n) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      throw std::invalid_argument("Graph: duplicate edge");
  }
  edges.assign(seen.begin(), seen.end());
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<size_t>(num_nodes));
  for (const auto& [u, v] : edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<size_t>(num_nodes), 0);
  for (const auto& [u, v] : edges) {
    ++deg[static_cast<size_t>(u)];
    ++deg[static_cast<size_t>(v)];
  }
  return deg;
}

bool Graph::connected() const {
  if (num_nodes <= 1) return true;
  const auto adj = adjacency();
  std::vector<bool> visited(static_cast<size_t>(num_nodes), false);
  std::vector<int> stack = {0};
  visited[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (!visited[static_cast<size_t>(v)]) {
        visited[static_cast<size_t>(v)] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == num_nodes;
}

Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path_graph: need at least one vertex");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph ring_graph(int n) {
  if (n < 3) throw std::invalid_argument("ring_graph: need at least three vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

Graph random_connected_graph(int n, double edge_prob, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_connected_graph: need at least one vertex");
  if (edge_prob <= 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("random_connected_graph: edge_prob must lie in (0, 1]");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.uniform() < edge_prob) edges.emplace_back(u, v);
    Graph g(n, std::move(edges));
    if (g.connected()) return g;
  }
  throw std::runtime_error(
      "random_connected_graph: no connected sample found (edge_prob too small?)");
}

Graph read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long u, v;
    if (!(fields >> u)) continue;  // blank or comment-only line
    if (!(fields >> v))
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected two vertex indices");
    std::string extra;
    if (fields >> extra)
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": trailing content '" + extra + "'");
    if (u < 1 || v < 1)
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": vertices are 1-indexed");
    edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    max_vertex = std::max<int>(max_vertex, static_cast<int>(std::max(u, v)));
  }
  return Graph(max_vertex, std::move(edges));
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edges) out << (u + 1) << ' ' << (v + 1) << '\n';
}

Eigen::MatrixXd incidence_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.edges.size()),
                                            g.num_nodes);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    a(static_cast<Eigen::Index>(e), g.edges[e].first) = -1.0;
    a(static_cast<Eigen::Index>(e), g.edges[e].second) = 1.0;
  }
  return a;
}

Eigen::MatrixXd signed_laplacian(const Graph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.num_nodes, g.num_nodes);
  for (const auto& [u, v] : g.edges) {
    l(u, u) += 1.0;
    l(v, v) += 1.0;
    l(u, v) -= 1.0;
    l(v, u) -= 1.0;
  }
  return l;
}

}  // namespace gpda
