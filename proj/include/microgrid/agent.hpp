#pragma once

namespace microgrid {

/// One building's local view: its demand, its willingness-to-pay weight, and
/// its running estimate of the global average demand.
struct BuildingState {
  int id = 0;
  double demand = 0.0;
  double wtp = 0.0;
  double estimate = 0.0;
};

struct AgentParams {
  double alpha = 0.05;        // update step, in (0, 1)
  double demand_floor = 1e-6; // lower clamp keeping the log utility defined

  void validate() const;
};

/// wtp * ln(demand); demand must be positive.
double utility(double wtp, double demand);

/// utility minus expenditure at the given unit price.
double net_payoff(double wtp, double demand, double price);

struct DemandUpdate {
  double new_demand = 0.0;
  double delta = 0.0;   // post-clamp change, so sums stay conserved downstream
  bool clamped = false;
};

/// demand + alpha * (wtp - demand * price), clamped at the floor.
DemandUpdate demand_update(const BuildingState& state, double price,
                           const AgentParams& params);

/// wtp / price, the exact maximizer of the net payoff in demand.
double optimal_demand(double wtp, double price);

}  // namespace microgrid
