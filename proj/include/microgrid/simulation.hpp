#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "microgrid/errors.hpp"
#include "microgrid/protocol.hpp"
#include "microgrid/scenario.hpp"

namespace microgrid {

/// Full run history plus the final snapshot. "Final" always refers to the
/// last recorded slot, so cut_down[i] = initial_demand[i] - final demand[i]
/// is an exact accounting identity over the record.
struct SimulationRecord {
  Scenario scenario;
  std::vector<SlotOutcome> outcomes;
  std::optional<int> equilibrium_slot;
  Eigen::VectorXd final_demands;
  Eigen::VectorXd final_prices;
  Eigen::VectorXd optimal_demands;  // wtp / final price, per agent
  Eigen::VectorXd cut_down;
  long total_clamp_events = 0;
};

/// Averaging failure inside a static slot; carries whatever the run had
/// recorded up to the failing slot.
struct AveragingAbort : ConvergenceError {
  AveragingAbort(const ConvergenceError& cause, int slot_, SimulationRecord partial)
      : ConvergenceError(cause), slot(slot_), partial_record(std::move(partial)) {}
  int slot;
  SimulationRecord partial_record;
};

/// Iterate the configured slot function until every agent's demand change
/// stays below eq_tolerance for eq_consecutive slots in a row, or max_slots
/// is reached (reported via equilibrium_slot = nullopt, not an error).
SimulationRecord run_simulation(const Scenario& scenario);

}  // namespace microgrid
