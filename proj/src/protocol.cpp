#include "microgrid/protocol.hpp"

#include <string>

#include "microgrid/errors.hpp"

namespace microgrid {

Mode mode_from_string(const std::string& s) {
  if (s == "static") return Mode::Static;
  if (s == "dynamic") return Mode::Dynamic;
  throw ArgumentError("unknown protocol mode: " + s);
}

std::string to_string(Mode mode) { return mode == Mode::Static ? "static" : "dynamic"; }

void ProtocolConfig::validate() const {
  if (max_slots < 1) throw ArgumentError("protocol: max_slots must be at least 1");
  if (!(eq_tolerance > 0.0)) throw ArgumentError("protocol: eq_tolerance must be positive");
  if (eq_consecutive < 1) throw ArgumentError("protocol: eq_consecutive must be at least 1");
  if (!(avg_tolerance > 0.0)) throw ArgumentError("protocol: avg_tolerance must be positive");
  if (n_known < 1) throw ArgumentError("protocol: n_known must be at least 1");
}

namespace {

void check_dimensions(const AgentStates& states, const WeightMatrix& wm,
                      const ProtocolConfig& cfg) {
  if (states.demands.size() == 0) throw ArgumentError("slot: no agents");
  if (states.wtp.size() != states.demands.size() ||
      states.estimates.size() != states.demands.size())
    throw ArgumentError("slot: agent state vectors differ in length");
  if (wm.n != states.demands.size())
    throw ArgumentError("slot: weight matrix dimension mismatch");
  if (cfg.n_known != states.demands.size())
    throw ArgumentError("slot: n_known does not match the agent count");
}

// Shared second half of a slot: price per agent from its estimated total,
// update every demand, record the outcome.
SlotResult finish_slot(const AgentStates& states, const Eigen::VectorXd& estimates,
                       const PricingParams& pricing, const AgentParams& agent_params,
                       const ProtocolConfig& cfg, int slot, int consensus_rounds) {
  const auto n = states.demands.size();
  SlotResult result;
  result.outcome.slot = slot;
  result.outcome.demands = states.demands;
  result.outcome.estimates = estimates;
  result.outcome.totals_estimated = static_cast<double>(cfg.n_known) * estimates;
  result.outcome.total_true = states.demands.sum();
  result.outcome.constraint_ok = result.outcome.total_true < pricing.capacity;
  result.outcome.consensus_rounds = consensus_rounds;
  result.outcome.prices.resize(n);
  result.outcome.deltas.resize(n);

  result.next = states;
  result.next.estimates = estimates;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = price(pricing, std::max(result.outcome.totals_estimated(i), 0.0));
    result.outcome.prices(i) = p;
    const BuildingState agent{static_cast<int>(i), states.demands(i), states.wtp(i),
                              estimates(i)};
    const DemandUpdate update = demand_update(agent, p, agent_params);
    result.next.demands(i) = update.new_demand;
    result.outcome.deltas(i) = update.delta;
    if (update.clamped) ++result.outcome.clamp_events;
  }
  return result;
}

}  // namespace

SlotResult static_slot(const AgentStates& states, const WeightMatrix& wm,
                       const PricingParams& pricing, const AgentParams& agent_params,
                       const ProtocolConfig& cfg, int slot) {
  check_dimensions(states, wm, cfg);
  const AveragingResult avg =
      run_averaging(wm, states.demands, cfg.avg_tolerance, cfg.avg_max_rounds);
  return finish_slot(states, avg.estimates, pricing, agent_params, cfg, slot,
                     avg.rounds_used);
}

SlotResult dynamic_slot(const AgentStates& states, const WeightMatrix& wm,
                        const PricingParams& pricing, const AgentParams& agent_params,
                        const ProtocolConfig& cfg, int slot) {
  check_dimensions(states, wm, cfg);
  SlotResult result =
      finish_slot(states, states.estimates, pricing, agent_params, cfg, slot, 0);
  // Estimates advance with the demand changes as local tracking inputs, so
  // sum(estimates) keeps following sum(demands).
  result.next.estimates = tracking_round(wm, states.estimates, result.outcome.deltas);
  return result;
}

}  // namespace microgrid
