#include "microgrid/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "microgrid/errors.hpp"
#include "microgrid/jacobi.hpp"

namespace microgrid {

WeightMatrix best_constant_weights(const Graph& g) {
  const int n = g.size();
  if (n == 1) {
    WeightMatrix wm;
    wm.n = 1;
    wm.w = Eigen::MatrixXd::Ones(1, 1);
    return wm;
  }
  if (!is_connected(g)) throw TopologyError("best_constant_weights: graph is not connected");

  const Eigen::MatrixXd l = laplacian(g);
  const auto eig = eigenvalues_symmetric(l);
  const double lambda_max = eig.values(n - 1);
  const double lambda_2 = eig.values(1);
  // Spectral double-check: algebraic connectivity must clear the zero cluster.
  if (!(lambda_2 > 1e-9 * lambda_max))
    throw TopologyError("best_constant_weights: vanishing algebraic connectivity");

  WeightMatrix wm;
  wm.n = n;
  wm.alpha_bc = 2.0 / (lambda_max + lambda_2);
  wm.w = Eigen::MatrixXd::Identity(n, n) - wm.alpha_bc * l;
  wm.rho = 0.0;
  for (int i = 1; i < n; ++i)
    wm.rho = std::max(wm.rho, std::abs(1.0 - wm.alpha_bc * eig.values(i)));
  wm.edges = g.edges();
  return wm;
}

Eigen::VectorXd consensus_round(const WeightMatrix& wm,
                                const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() != wm.n)
    throw ArgumentError("consensus_round: expected " + std::to_string(wm.n) + " values, got " +
                        std::to_string(values.size()));
  Eigen::VectorXd out = wm.w.diagonal().cwiseProduct(values);
  for (const auto& [i, j] : wm.edges) {
    out(i) += wm.w(i, j) * values(j);
    out(j) += wm.w(j, i) * values(i);
  }
  return out;
}

int default_averaging_rounds(int n) { return std::max(500, 10 * n * n); }

AveragingResult run_averaging(const WeightMatrix& wm,
                              const Eigen::Ref<const Eigen::VectorXd>& x0, double tol,
                              int max_rounds) {
  if (!(tol > 0.0)) throw ArgumentError("run_averaging: tol must be positive");
  if (x0.size() != wm.n)
    throw ArgumentError("run_averaging: expected " + std::to_string(wm.n) + " values, got " +
                        std::to_string(x0.size()));
  if (max_rounds <= 0) max_rounds = default_averaging_rounds(wm.n);

  const double mean = x0.mean();
  const double band = tol * (1.0 + std::abs(mean));
  AveragingResult result;
  result.estimates = x0;
  double disagreement = (result.estimates.array() - mean).abs().maxCoeff();
  while (disagreement > band) {
    if (result.rounds_used >= max_rounds)
      throw ConvergenceError("run_averaging: disagreement " + std::to_string(disagreement) +
                                 " above band after " + std::to_string(result.rounds_used) +
                                 " rounds",
                             disagreement);
    result.estimates = consensus_round(wm, result.estimates);
    ++result.rounds_used;
    disagreement = (result.estimates.array() - mean).abs().maxCoeff();
  }
  return result;
}

Eigen::VectorXd tracking_round(const WeightMatrix& wm,
                               const Eigen::Ref<const Eigen::VectorXd>& estimates,
                               const Eigen::Ref<const Eigen::VectorXd>& deltas) {
  if (deltas.size() != estimates.size())
    throw ArgumentError("tracking_round: estimates and deltas differ in length");
  return consensus_round(wm, estimates) + deltas;
}

}  // namespace microgrid
