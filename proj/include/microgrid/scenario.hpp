#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "microgrid/agent.hpp"
#include "microgrid/graph.hpp"
#include "microgrid/pricing.hpp"
#include "microgrid/protocol.hpp"

namespace microgrid {

/// Topology as specified, not yet materialized: either a named generator
/// (kind + n [+ p], resolved with the scenario seed) or an explicit edge list.
struct GraphSpec {
  bool explicit_edges = false;
  GraphKind kind = GraphKind::ring;
  int n = 0;
  double p = 0.0;  // erdos_renyi only
  std::vector<std::pair<int, int>> edges;

  bool operator==(const GraphSpec&) const = default;
};

Graph resolve_graph(const GraphSpec& spec, std::uint64_t seed);

// Scenario file format: line-based `key = value`, '#' starts a comment,
// vectors are comma-separated. Keys:
//   graph.kind = ring|path|complete|erdos_renyi|grid2d   (with graph.n [, graph.p])
//   graph.n    = <int>          edge = i,j   (repeated; explicit topology)
//   agents.wtp = w0,w1,...      agents.initial_demand = x0,x1,...
//   agents.alpha = 0.05         agents.demand_floor = 1e-6
//   price.a = 1                 price.k = 4
//   price.capacity = <real>     price.sigmoid = standard|zero_centered
//   price.tau = 10
//   protocol.mode = static|dynamic          protocol.max_slots = 500
//   protocol.eq_tolerance = 1e-4            protocol.eq_consecutive = 5
//   protocol.avg_tolerance = 1e-9           protocol.avg_max_rounds = 0 (auto)
//   seed = 0                    output.dir = out
// Unknown and duplicate keys are rejected; vector lengths must match graph.n.
struct Scenario {
  GraphSpec graph;
  Eigen::VectorXd wtp;
  Eigen::VectorXd initial_demand;
  AgentParams agent_params;
  PricingParams pricing;
  ProtocolConfig protocol;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  bool operator==(const Scenario& other) const;
};

/// Parse and fully validate a scenario. Syntax problems throw ParseError with
/// the offending line; semantic problems throw ValidationError naming the key.
Scenario parse_scenario(const std::string& text);

/// Inverse of parse_scenario; doubles are written with enough digits to
/// round-trip exactly.
std::string serialize_scenario(const Scenario& s);

/// The bundled 10-building reference scenario: ring topology, capacity 700,
/// wtp summing to 702, initial demands summing to 765.9.
Scenario preset_scenario();

/// Replace initial demands with a uniform draw from [50, 100], deterministic
/// in the seed.
void sample_initial_demands(Scenario& s, std::uint64_t seed);

}  // namespace microgrid
