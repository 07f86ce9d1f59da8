#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "microgrid/csv.hpp"
#include "microgrid/errors.hpp"
#include "microgrid/graph.hpp"
#include "microgrid/simulation.hpp"
#include "microgrid/svg.hpp"
#include "../support/test_helpers.hpp"

using namespace microgrid;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& text) {
  return testsupport::count_occurrences(text, "\n");
}

// Small synthetic record: two agents, `slots` recorded slots.
SimulationRecord tiny_record(int slots) {
  SimulationRecord record;
  record.scenario.graph.n = 2;
  record.scenario.graph.kind = GraphKind::complete;
  record.scenario.wtp = Eigen::Vector2d(40.0, 60.0);
  record.scenario.initial_demand = Eigen::Vector2d(55.0, 65.0);
  record.scenario.pricing.capacity = 150.0;
  record.scenario.protocol.n_known = 2;
  for (int t = 1; t <= slots; ++t) {
    SlotOutcome o;
    o.slot = t;
    o.demands = Eigen::Vector2d(55.0 - t, 65.0 - t);
    o.estimates = Eigen::Vector2d(60.0 - t, 60.0 - t);
    o.prices = Eigen::Vector2d(0.5, 0.5);
    o.totals_estimated = 2.0 * o.estimates;
    o.total_true = o.demands.sum();
    o.constraint_ok = o.total_true < 150.0;
    o.deltas = Eigen::Vector2d(-1.0, -1.0);
    record.outcomes.push_back(o);
  }
  if (slots > 0) {
    record.final_demands = record.outcomes.back().demands;
    record.final_prices = record.outcomes.back().prices;
  } else {
    record.final_demands = record.scenario.initial_demand;
    record.final_prices = Eigen::Vector2d(0.0, 0.0);
  }
  record.cut_down = record.scenario.initial_demand - record.final_demands;
  return record;
}

}  // namespace

TEST_CASE("format_real uses ten significant digits") {
  CHECK(format_real(765.8999999999999) == "765.9");
  CHECK(format_real(0.45641613715516516) == "0.4564161372");
  CHECK(format_real(700.0) == "700");
  CHECK(format_real(1e-6) == "1e-06");
}

TEST_CASE("csv files have one row per slot plus the header") {
  const auto dir = std::filesystem::temp_directory_path() / "mgsim_csv_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_csv(tiny_record(3), dir);
  REQUIRE(paths.size() == 4);

  const std::string demands = slurp(paths[0]);
  CHECK(line_count(demands) == 4);  // header + 3 slots
  CHECK(demands.rfind("slot,b0,b1\n", 0) == 0);
  CHECK(demands.find('\r') == std::string::npos);

  const std::string prices = slurp(paths[1]);
  CHECK(prices.rfind("slot,p0,p1\n", 0) == 0);
  CHECK(line_count(prices) == 4);

  const std::string totals = slurp(paths[2]);
  CHECK(totals.rfind("slot,total_true,capacity,constraint_ok\n", 0) == 0);
  CHECK(totals.find(",150,") != std::string::npos);
  CHECK(totals.find("true") != std::string::npos);

  const std::string cutdown = slurp(paths[3]);
  CHECK(cutdown.rfind("building,initial,final,cut\n", 0) == 0);
  CHECK(line_count(cutdown) == 3);  // header + 2 buildings
  CHECK(cutdown.find("0,55,52,3") != std::string::npos);
}

TEST_CASE("empty record writes headers and zero cut-down rows") {
  const auto dir = std::filesystem::temp_directory_path() / "mgsim_csv_empty";
  std::filesystem::remove_all(dir);
  const auto paths = write_csv(tiny_record(0), dir);
  CHECK(slurp(paths[0]) == "slot,b0,b1\n");
  CHECK(slurp(paths[1]) == "slot,p0,p1\n");
  CHECK(slurp(paths[2]) == "slot,total_true,capacity,constraint_ok\n");
  const std::string cutdown = slurp(paths[3]);
  CHECK(line_count(cutdown) == 3);
  CHECK(cutdown.find("0,55,55,0") != std::string::npos);
  CHECK(cutdown.find("1,65,65,0") != std::string::npos);
}

TEST_CASE("weight matrix debug dump") {
  const WeightMatrix wm = best_constant_weights(generate_graph(GraphKind::path, 3, 0));
  const auto path = std::filesystem::temp_directory_path() / "mgsim_wm.csv";
  write_weight_matrix_csv(wm, path);
  const std::string text = slurp(path);
  CHECK(line_count(text) == 3);
  CHECK(text.rfind("0.5,0.5,0\n", 0) == 0);
}

TEST_CASE("line chart renders one polyline per series") {
  const std::string svg = render_line_chart({{"s", {{0.0, 1.0}, {1.0, 2.0}}}});
  CHECK(testsupport::count_occurrences(svg, "<polyline") == 1);
  CHECK(testsupport::xml_well_formed(svg));
  CHECK(svg.find("svg") != std::string::npos);

  const std::string two = render_line_chart(
      {{"a", {{0.0, 1.0}, {1.0, 2.0}}}, {"b", {{0.0, 3.0}, {1.0, 1.0}}}});
  CHECK(testsupport::count_occurrences(two, "<polyline") == 2);
  CHECK(two.find(">a</text>") != std::string::npos);  // legend entries
  CHECK(two.find(">b</text>") != std::string::npos);

  CHECK_THROWS_AS(render_line_chart({}), ArgumentError);
  CHECK_THROWS_AS(render_line_chart({{"empty", {}}}), ArgumentError);
}

TEST_CASE("totals chart of a reference run carries the capacity rule") {
  Scenario s = preset_scenario();
  s.protocol.max_slots = 10;
  const SimulationRecord record = run_simulation(s);
  const std::string svg = render_svg(ChartKind::totals, record);
  CHECK(testsupport::xml_well_formed(svg));
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("capacity") != std::string::npos);
  CHECK(testsupport::count_occurrences(svg, "<polyline") == 1);
}

TEST_CASE("cut-down bar chart has one bar per building") {
  Scenario s = preset_scenario();
  s.protocol.max_slots = 10;
  const SimulationRecord record = run_simulation(s);
  const std::string svg = render_svg(ChartKind::cutdown, record);
  CHECK(testsupport::xml_well_formed(svg));
  std::size_t bars = 0;
  for (std::size_t pos = svg.find("<rect"); pos != std::string::npos;
       pos = svg.find("<rect", pos + 1)) {
    const std::size_t end = svg.find("/>", pos);
    if (svg.substr(pos, end - pos).find("fill='white'") == std::string::npos) ++bars;
  }
  CHECK(bars == 10);
}

TEST_CASE("all chart kinds emit well-formed xml") {
  Scenario s = preset_scenario();
  s.protocol.max_slots = 8;
  const SimulationRecord record = run_simulation(s);
  for (ChartKind kind :
       {ChartKind::demands, ChartKind::prices, ChartKind::totals, ChartKind::cutdown}) {
    const std::string svg = render_svg(kind, record);
    CHECK(testsupport::xml_well_formed(svg));
    CHECK(svg.find("version='1.1'") != std::string::npos);
  }
}
