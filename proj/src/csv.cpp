#include "microgrid/csv.hpp"

#include <cstdio>
#include <fstream>

#include "microgrid/errors.hpp"

namespace microgrid {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_csv(const SimulationRecord& record,
                                             const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

  const Eigen::Index n = record.scenario.graph.n;

  std::string demands = "slot";
  std::string prices = "slot";
  for (Eigen::Index i = 0; i < n; ++i) demands += ",b" + std::to_string(i);
  for (Eigen::Index i = 0; i < n; ++i) prices += ",p" + std::to_string(i);
  demands += "\n";
  prices += "\n";
  std::string totals = "slot,total_true,capacity,constraint_ok\n";

  for (const SlotOutcome& slot : record.outcomes) {
    demands += std::to_string(slot.slot);
    prices += std::to_string(slot.slot);
    for (Eigen::Index i = 0; i < n; ++i) demands += "," + format_real(slot.demands(i));
    for (Eigen::Index i = 0; i < n; ++i) prices += "," + format_real(slot.prices(i));
    demands += "\n";
    prices += "\n";
    totals += std::to_string(slot.slot) + "," + format_real(slot.total_true) + "," +
              format_real(record.scenario.pricing.capacity) + "," +
              (slot.constraint_ok ? "true" : "false") + "\n";
  }

  std::string cutdown = "building,initial,final,cut\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    cutdown += std::to_string(i) + "," + format_real(record.scenario.initial_demand(i)) + "," +
               format_real(record.final_demands(i)) + "," + format_real(record.cut_down(i)) +
               "\n";
  }

  const std::vector<std::filesystem::path> paths = {
      dir / "demands.csv", dir / "prices.csv", dir / "totals.csv", dir / "cutdown.csv"};
  write_file(paths[0], demands);
  write_file(paths[1], prices);
  write_file(paths[2], totals);
  write_file(paths[3], cutdown);
  return paths;
}

void write_weight_matrix_csv(const WeightMatrix& wm, const std::filesystem::path& path) {
  std::string text;
  for (int i = 0; i < wm.n; ++i) {
    for (int j = 0; j < wm.n; ++j) {
      if (j) text += ",";
      text += format_real(wm.w(i, j));
    }
    text += "\n";
  }
  write_file(path, text);
}

}  // namespace microgrid
