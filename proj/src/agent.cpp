#include "microgrid/agent.hpp"

#include <cmath>

#include "microgrid/errors.hpp"

namespace microgrid {

void AgentParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("agent: alpha must be in (0, 1)");
  if (!(demand_floor > 0.0)) throw ArgumentError("agent: demand_floor must be positive");
}

double utility(double wtp, double demand) {
  if (!(demand > 0.0)) throw ArgumentError("utility: demand must be positive");
  return wtp * std::log(demand);
}

double net_payoff(double wtp, double demand, double price) {
  return utility(wtp, demand) - demand * price;
}

DemandUpdate demand_update(const BuildingState& state, double price,
                           const AgentParams& params) {
  const double raw = state.demand + params.alpha * (state.wtp - state.demand * price);
  DemandUpdate update;
  update.clamped = raw < params.demand_floor;
  update.new_demand = update.clamped ? params.demand_floor : raw;
  update.delta = update.new_demand - state.demand;
  return update;
}

double optimal_demand(double wtp, double price) {
  if (!(price > 0.0)) throw ArgumentError("optimal_demand: price must be positive");
  return wtp / price;
}

}  // namespace microgrid
