#pragma once

#include <Eigen/Dense>

#include "microgrid/agent.hpp"
#include "microgrid/consensus.hpp"
#include "microgrid/pricing.hpp"

namespace microgrid {

enum class Mode { Static, Dynamic };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode mode);

struct ProtocolConfig {
  Mode mode = Mode::Static;
  int max_slots = 500;
  double eq_tolerance = 1e-4;  // per-agent demand-change threshold
  int eq_consecutive = 5;      // slots the threshold must hold in a row
  double avg_tolerance = 1e-9; // static inner averaging loop
  int avg_max_rounds = 0;      // <= 0 means max(500, 10 n^2)
  int n_known = 0;             // agents scale their average estimate by this

  void validate() const;
};

/// Everything observable about one time slot: the state the prices were
/// computed from, the prices, and the demand changes the slot produced.
struct SlotOutcome {
  int slot = 0;                     // 1-based
  Eigen::VectorXd demands;          // demands entering the slot
  Eigen::VectorXd estimates;        // per-agent average estimates used for pricing
  Eigen::VectorXd prices;           // per-agent; identical entries in static mode
  Eigen::VectorXd totals_estimated; // n_known * estimates, elementwise
  double total_true = 0.0;
  bool constraint_ok = false;       // total_true strictly below capacity
  int consensus_rounds = 0;         // inner averaging rounds (static mode only)
  int clamp_events = 0;
  Eigen::VectorXd deltas;           // post-clamp demand changes
};

/// Vectorized agent state; the slot functions are pure and return the
/// advanced copy alongside the outcome.
struct AgentStates {
  Eigen::VectorXd demands;
  Eigen::VectorXd wtp;
  Eigen::VectorXd estimates;
};

struct SlotResult {
  AgentStates next;
  SlotOutcome outcome;
};

/// One slot of the consensus-then-adjust protocol: run distributed averaging
/// on the current demands to tolerance, price the estimated total per agent,
/// and apply every agent's demand update. Averaging failure propagates.
SlotResult static_slot(const AgentStates& states, const WeightMatrix& wm,
                       const PricingParams& pricing, const AgentParams& agent_params,
                       const ProtocolConfig& cfg, int slot);

/// One slot of the tracking protocol: each agent prices its own running
/// estimate, updates its demand, and the estimates advance by one tracking
/// round with the demand changes as local inputs. Keeps sum(estimates) equal
/// to sum(demands) when they start equal.
SlotResult dynamic_slot(const AgentStates& states, const WeightMatrix& wm,
                        const PricingParams& pricing, const AgentParams& agent_params,
                        const ProtocolConfig& cfg, int slot);

}  // namespace microgrid
