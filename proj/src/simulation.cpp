#include "microgrid/simulation.hpp"

#include "microgrid/errors.hpp"

namespace microgrid {

SimulationRecord run_simulation(const Scenario& scenario) {
  scenario.agent_params.validate();
  scenario.pricing.validate();
  scenario.protocol.validate();
  if (scenario.wtp.size() != scenario.graph.n ||
      scenario.initial_demand.size() != scenario.graph.n)
    throw ArgumentError("run_simulation: agent vectors do not match the graph size");

  const Graph graph = resolve_graph(scenario.graph, scenario.seed);
  if (!is_connected(graph)) throw TopologyError("run_simulation: topology is not connected");
  const WeightMatrix wm = best_constant_weights(graph);

  SimulationRecord record;
  record.scenario = scenario;

  AgentStates states;
  states.demands = scenario.initial_demand;
  states.wtp = scenario.wtp;
  states.estimates = scenario.initial_demand;  // each agent starts from its own demand

  const auto finalize = [&scenario](SimulationRecord& r) {
    if (r.outcomes.empty()) {
      r.final_demands = scenario.initial_demand;
      r.final_prices = Eigen::VectorXd::Zero(scenario.graph.n);
      r.optimal_demands = Eigen::VectorXd::Zero(scenario.graph.n);
    } else {
      const SlotOutcome& last = r.outcomes.back();
      r.final_demands = last.demands;
      r.final_prices = last.prices;
      r.optimal_demands = scenario.wtp.cwiseQuotient(last.prices);
    }
    r.cut_down = scenario.initial_demand - r.final_demands;
  };

  const auto slot_fn = scenario.protocol.mode == Mode::Static ? static_slot : dynamic_slot;
  int consecutive_quiet = 0;
  for (int slot = 1; slot <= scenario.protocol.max_slots; ++slot) {
    SlotResult result = [&] {
      try {
        return slot_fn(states, wm, scenario.pricing, scenario.agent_params, scenario.protocol,
                       slot);
      } catch (const ConvergenceError& e) {
        finalize(record);
        throw AveragingAbort(e, slot, std::move(record));
      }
    }();
    record.outcomes.push_back(std::move(result.outcome));
    record.total_clamp_events += record.outcomes.back().clamp_events;

    const double max_change = record.outcomes.back().deltas.cwiseAbs().maxCoeff();
    consecutive_quiet = max_change < scenario.protocol.eq_tolerance ? consecutive_quiet + 1 : 0;
    if (consecutive_quiet >= scenario.protocol.eq_consecutive) {
      record.equilibrium_slot = slot;
      break;  // the discarded pending update is below eq_tolerance everywhere
    }
    states = std::move(result.next);
  }

  finalize(record);
  return record;
}

}  // namespace microgrid
