#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace microgrid {

enum class GraphKind { ring, path, complete, erdos_renyi, grid2d };

GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(GraphKind kind);

/// Undirected simple graph on vertices 0..n-1, immutable after construction.
/// Edges are normalized to (i, j) with i < j and kept sorted; self-loops and
/// duplicates are rejected.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int degree(int v) const { return degrees_[static_cast<std::size_t>(v)]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> degrees_;
};

/// Deterministic generator for the supported topology families. `p` is only
/// consulted for erdos_renyi, which resamples with incremented seed until the
/// draw is connected (at most 1000 attempts). Requires n >= 2.
Graph generate_graph(GraphKind kind, int n, std::uint64_t seed, double p = 0.0);

/// Breadth-first reachability of every vertex from vertex 0.
bool is_connected(const Graph& g);

Eigen::MatrixXd adjacency(const Graph& g);

/// L = D - A; rows sum to zero exactly since all entries are small integers.
Eigen::MatrixXd laplacian(const Graph& g);

}  // namespace microgrid
