#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace gpda {

/// Undirected simple graph on vertices 0..num_nodes-1. Edges are normalized to
/// (smaller, larger) and kept sorted lexicographically, which fixes the row
/// order of every matrix derived from the edge list.
struct Graph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  /// Validates vertex ranges, rejects self-loops and duplicate edges,
  /// normalizes and sorts.
  Graph(int n, std::vector<std::pair<int, int>> edge_list);

  std::vector<std::vector<int>> adjacency() const;  ///< sorted neighbor lists
  std::vector<int> degrees() const;
  bool connected() const;  ///< true for n == 1 and the empty 0-vertex graph
};

Graph path_graph(int n);
Graph ring_graph(int n);

/// Erdos-Renyi draw conditioned on connectivity: coin flips in lexicographic
/// pair order, resampled until the result is connected (bounded retries).
Graph random_connected_graph(int n, double edge_prob, std::uint64_t seed);

/// Edge-list text: one "i j" pair per line, 1-indexed vertices, '#' comments
/// and blank lines allowed. Vertex count = largest index seen.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

/// Oriented incidence matrix, one row per edge (u, v) with u < v: +1 in the
/// larger-index column v, -1 in column u. Row sums vanish, and the product
/// A^T A is the signed Laplacian below.
Eigen::MatrixXd incidence_matrix(const Graph& g);

/// Signed Laplacian: degrees on the diagonal, -1 per edge off the diagonal.
Eigen::MatrixXd signed_laplacian(const Graph& g);

}  // namespace gpda
