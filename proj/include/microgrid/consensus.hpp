#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "microgrid/graph.hpp"

namespace microgrid {

/// Symmetric doubly stochastic mixing matrix over a graph's edge set.
/// `rho` is the spectral contraction factor on the disagreement subspace;
/// rho < 1 whenever the underlying graph is connected.
struct WeightMatrix {
  int n = 0;
  Eigen::MatrixXd w;
  double alpha_bc = 0.0;
  double rho = 0.0;
  std::vector<std::pair<int, int>> edges;  // sparsity pattern, i < j
};

/// W = I - alpha * L with alpha = 2 / (lambda_max + lambda_2). A single-node
/// graph yields the identity with alpha_bc = rho = 0.
WeightMatrix best_constant_weights(const Graph& g);

/// One mixing step out[i] = w_ii * v[i] + sum over neighbors j of w_ij * v[j].
/// Iterates the edge list, never the dense rows, so every node touches only
/// neighbor values. Preserves the sum.
Eigen::VectorXd consensus_round(const WeightMatrix& wm,
                                const Eigen::Ref<const Eigen::VectorXd>& values);

struct AveragingResult {
  Eigen::VectorXd estimates;
  int rounds_used = 0;
};

int default_averaging_rounds(int n);  // max(500, 10 n^2)

/// Mix until max_i |v_i - mean(x0)| <= tol * (1 + |mean(x0)|), or throw
/// ConvergenceError carrying the remaining disagreement once max_rounds is
/// spent. Pass max_rounds <= 0 for the default budget.
AveragingResult run_averaging(const WeightMatrix& wm,
                              const Eigen::Ref<const Eigen::VectorXd>& x0,
                              double tol, int max_rounds = 0);

/// One dynamic-tracking step: mix the estimates, then add each node's local
/// input change. Sum of output = sum of estimates + sum of deltas.
Eigen::VectorXd tracking_round(const WeightMatrix& wm,
                               const Eigen::Ref<const Eigen::VectorXd>& estimates,
                               const Eigen::Ref<const Eigen::VectorXd>& deltas);

}  // namespace microgrid
