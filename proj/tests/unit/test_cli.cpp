#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "microgrid/cli.hpp"
#include "microgrid/scenario.hpp"

using namespace microgrid;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliRun invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"mgsim"};
  for (const std::string& a : args) argv.push_back(a.c_str());

  std::ostringstream out, err;
  std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
  CliRun result;
  result.exit_code = cli_main(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double summary_value(const std::string& line, const std::string& key) {
  const auto pos = line.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(line.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("preset subcommand writes a parseable scenario summing to 765.9") {
  const fs::path dir = fresh_dir("mgsim_cli_preset");
  const CliRun run = invoke({"preset", "--out", dir.string()});
  CHECK(run.exit_code == 0);
  const fs::path cfg = dir / "preset.cfg";
  REQUIRE(fs::exists(cfg));
  CHECK(run.out.find("preset.cfg") != std::string::npos);

  const Scenario s = parse_scenario(slurp(cfg));
  CHECK(std::abs(s.initial_demand.sum() - 765.9) <= 1e-12 * 765.9);
  CHECK(s == preset_scenario());
}

TEST_CASE("run on the preset reports an in-band final total") {
  const fs::path dir = fresh_dir("mgsim_cli_run");
  REQUIRE(invoke({"preset", "--out", dir.string()}).exit_code == 0);
  const CliRun run = invoke({"run", "--scenario", (dir / "preset.cfg").string(), "--mode",
                             "static", "--out", (dir / "out").string()});
  CHECK(run.exit_code == 0);
  CHECK(run.out.rfind("mode=static", 0) == 0);
  CHECK(run.out.find("equilibrium=") != std::string::npos);
  const double final_total = summary_value(run.out, "final_total");
  CHECK(final_total >= 693.0);
  CHECK(final_total <= 707.0);
  CHECK(fs::exists(dir / "out" / "demands.csv"));
  CHECK(fs::exists(dir / "out" / "prices.csv"));
  CHECK(fs::exists(dir / "out" / "cutdown.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "demands.svg"));
  const std::string totals = slurp(dir / "out" / "totals.csv");
  CHECK(totals.find("\n1,765.9,700,false\n") != std::string::npos);
}

TEST_CASE("emit-svg writes the four charts") {
  const fs::path dir = fresh_dir("mgsim_cli_svg");
  REQUIRE(invoke({"preset", "--out", dir.string()}).exit_code == 0);
  const CliRun run = invoke({"run", "--scenario", (dir / "preset.cfg").string(), "--out",
                             (dir / "out").string(), "--emit-svg"});
  CHECK(run.exit_code == 0);
  for (const char* name : {"demands.svg", "prices.svg", "totals.svg", "cutdown.svg"})
    CHECK(fs::exists(dir / "out" / name));
}

TEST_CASE("command-line mode overrides the config mode") {
  const fs::path dir = fresh_dir("mgsim_cli_mode");
  REQUIRE(invoke({"preset", "--out", dir.string()}).exit_code == 0);
  const CliRun run = invoke({"run", "--scenario", (dir / "preset.cfg").string(), "--mode",
                             "dynamic", "--out", (dir / "out").string()});
  CHECK(run.exit_code == 0);
  CHECK(run.out.rfind("mode=dynamic", 0) == 0);
}

TEST_CASE("validate reports problems with exit code 2") {
  const fs::path dir = fresh_dir("mgsim_cli_validate");
  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "graph.kind = ring\ngraph.n = 10\n"
                     << "agents.wtp = 1,2,3,4,5,6,7,8,9\n"
                     << "agents.initial_demand = 1,2,3,4,5,6,7,8,9,10\n"
                     << "price.capacity = 700\n";
  const CliRun run = invoke({"validate", "--scenario", bad.string()});
  CHECK(run.exit_code == 2);
  CHECK(run.err.find("agents.wtp") != std::string::npos);

  const fs::path good = dir / "good.cfg";
  std::ofstream(good) << "graph.kind = complete\ngraph.n = 2\nagents.wtp = 40,60\n"
                      << "agents.initial_demand = 55,65\nprice.capacity = 150\n";
  const CliRun ok = invoke({"validate", "--scenario", good.string()});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("valid") != std::string::npos);

  const fs::path split = dir / "split.cfg";
  std::ofstream(split) << "graph.n = 4\nedge = 0,1\nedge = 2,3\nagents.wtp = 1,1,1,1\n"
                       << "agents.initial_demand = 1,1,1,1\nprice.capacity = 10\n";
  CHECK(invoke({"validate", "--scenario", split.string()}).exit_code == 2);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(invoke({}).exit_code == 1);
  CHECK(invoke({"run"}).exit_code == 1);           // missing --scenario
  CHECK(invoke({"frobnicate"}).exit_code == 1);    // unknown subcommand
  CHECK(invoke({"run", "--scenario", "x", "--mode", "sideways"}).exit_code == 1);
}

TEST_CASE("missing scenario file is a runtime failure") {
  CHECK(invoke({"run", "--scenario", "/nonexistent/path.cfg"}).exit_code == 3);
}

TEST_CASE("averaging failure exits 3 and leaves the partial series behind") {
  const fs::path dir = fresh_dir("mgsim_cli_abort");
  REQUIRE(invoke({"preset", "--out", dir.string()}).exit_code == 0);
  std::string cfg = slurp(dir / "preset.cfg");
  const std::string from = "protocol.avg_max_rounds = 0";
  cfg.replace(cfg.find(from), from.size(), "protocol.avg_max_rounds = 1");
  std::ofstream(dir / "preset.cfg", std::ios::binary) << cfg;
  const CliRun run = invoke({"run", "--scenario", (dir / "preset.cfg").string(), "--out",
                             (dir / "out").string()});
  CHECK(run.exit_code == 3);
  CHECK(run.err.find("partial") != std::string::npos);
  REQUIRE(fs::exists(dir / "out" / "demands.csv"));
  // The failure hits in slot 1, so only headers (plus zero cut-down rows) land.
  CHECK(slurp(dir / "out" / "demands.csv") == "slot,b0,b1,b2,b3,b4,b5,b6,b7,b8,b9\n");
  const std::string cutdown = slurp(dir / "out" / "cutdown.csv");
  CHECK(cutdown.find("0,57.3,57.3,0") != std::string::npos);
}

TEST_CASE("gen-topology emits a usable fragment") {
  const CliRun run = invoke({"gen-topology", "--kind", "ring", "--n", "6"});
  CHECK(run.exit_code == 0);
  CHECK(run.out.rfind("graph.n = 6", 0) == 0);
  std::size_t edges = 0;
  for (std::size_t pos = run.out.find("edge = "); pos != std::string::npos;
       pos = run.out.find("edge = ", pos + 1))
    ++edges;
  CHECK(edges == 6);

  const fs::path dir = fresh_dir("mgsim_cli_gen");
  const fs::path frag = dir / "topo.cfg";
  CHECK(invoke({"gen-topology", "--kind", "erdos_renyi", "--n", "8", "--p", "0.5", "--seed",
                "7", "--out", frag.string()})
            .exit_code == 0);
  std::string text = slurp(frag);
  text += "agents.wtp = 1,1,1,1,1,1,1,1\n";
  text += "agents.initial_demand = 2,2,2,2,2,2,2,2\n";
  text += "price.capacity = 20\n";
  CHECK(parse_scenario(text).graph.n == 8);
}

TEST_CASE("seed override changes sampled topologies deterministically") {
  const fs::path dir = fresh_dir("mgsim_cli_seed");
  const fs::path cfg = dir / "er.cfg";
  std::ofstream(cfg) << "graph.kind = erdos_renyi\ngraph.n = 8\ngraph.p = 0.4\n"
                     << "agents.wtp = 40,41,42,43,44,45,46,47\n"
                     << "agents.initial_demand = 50,51,52,53,54,55,56,57\n"
                     << "price.capacity = 600\nprotocol.max_slots = 40\n";
  const CliRun a = invoke({"run", "--scenario", cfg.string(), "--seed", "5", "--out",
                           (dir / "a").string()});
  const CliRun b = invoke({"run", "--scenario", cfg.string(), "--seed", "5", "--out",
                           (dir / "b").string()});
  const CliRun c = invoke({"run", "--scenario", cfg.string(), "--seed", "6", "--out",
                           (dir / "c").string()});
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(c.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp(dir / "a" / "demands.csv") == slurp(dir / "b" / "demands.csv"));
}

TEST_CASE("sample-initial draws fresh demands in range") {
  const fs::path dir = fresh_dir("mgsim_cli_sample");
  REQUIRE(invoke({"preset", "--out", dir.string()}).exit_code == 0);
  const CliRun run = invoke({"run", "--scenario", (dir / "preset.cfg").string(),
                             "--sample-initial", "--seed", "11", "--out",
                             (dir / "out").string()});
  CHECK(run.exit_code == 0);
  const std::string demands = slurp(dir / "out" / "demands.csv");
  // First data row must not be the preset vector anymore.
  CHECK(demands.find("57.3,98.1") == std::string::npos);
}
