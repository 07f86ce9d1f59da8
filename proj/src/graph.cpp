#include "microgrid/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "microgrid/errors.hpp"

namespace microgrid {

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "ring") return GraphKind::ring;
  if (s == "path") return GraphKind::path;
  if (s == "complete") return GraphKind::complete;
  if (s == "erdos_renyi") return GraphKind::erdos_renyi;
  if (s == "grid2d") return GraphKind::grid2d;
  throw ArgumentError("unknown graph kind: " + s);
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::ring: return "ring";
    case GraphKind::path: return "path";
    case GraphKind::complete: return "complete";
    case GraphKind::erdos_renyi: return "erdos_renyi";
    case GraphKind::grid2d: return "grid2d";
  }
  return "?";
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)), degrees_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n_ < 1) throw ArgumentError("graph: need at least one vertex");
  for (auto& [i, j] : edges_) {
    if (i == j) throw ArgumentError("graph: self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_)
      throw ArgumentError("graph: edge (" + std::to_string(i) + "," + std::to_string(j) +
                          ") out of range for n=" + std::to_string(n_));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw ArgumentError("graph: duplicate edge");
  for (const auto& [i, j] : edges_) {
    ++degrees_[static_cast<std::size_t>(i)];
    ++degrees_[static_cast<std::size_t>(j)];
  }
}

namespace {

// Uniform double in [0,1) from the top 53 bits; keeps draws identical across
// standard library implementations.
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::pair<int, int>> ring_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  if (n > 2) e.emplace_back(0, n - 1);
  return e;
}

std::vector<std::pair<int, int>> grid_edges(int n) {
  // Rows = largest divisor of n not above sqrt(n); primes degrade to a path.
  int rows = 1;
  for (int r = static_cast<int>(std::sqrt(static_cast<double>(n))); r >= 1; --r) {
    if (n % r == 0) {
      rows = r;
      break;
    }
  }
  const int cols = n / rows;
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return e;
}

}  // namespace

Graph generate_graph(GraphKind kind, int n, std::uint64_t seed, double p) {
  if (n < 2) throw ArgumentError("generate_graph: n must be at least 2");
  switch (kind) {
    case GraphKind::ring:
      return Graph(n, ring_edges(n));
    case GraphKind::path: {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
      return Graph(n, std::move(e));
    }
    case GraphKind::complete: {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
      return Graph(n, std::move(e));
    }
    case GraphKind::grid2d:
      return Graph(n, grid_edges(n));
    case GraphKind::erdos_renyi: {
      if (!(p > 0.0 && p <= 1.0))
        throw ArgumentError("generate_graph: erdos_renyi needs p in (0, 1]");
      constexpr int kMaxAttempts = 1000;
      for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (canonical(rng) < p) e.emplace_back(i, j);
        Graph g(n, std::move(e));
        if (is_connected(g)) return g;
      }
      throw TopologyError("generate_graph: no connected erdos_renyi draw in " +
                          std::to_string(kMaxAttempts) + " attempts (n=" + std::to_string(n) +
                          ", p=" + std::to_string(p) + ")");
    }
  }
  throw ArgumentError("generate_graph: unhandled kind");
}

bool is_connected(const Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [i, j] : g.edges()) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == n;
}

Eigen::MatrixXd adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (const auto& [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd l = -adjacency(g);
  for (int v = 0; v < g.size(); ++v) l(v, v) = static_cast<double>(g.degree(v));
  return l;
}

}  // namespace microgrid
