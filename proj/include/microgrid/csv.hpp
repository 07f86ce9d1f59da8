#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "microgrid/consensus.hpp"
#include "microgrid/simulation.hpp"

namespace microgrid {

/// One value, 10 significant digits, '.' decimal separator regardless of locale.
std::string format_real(double v);

/// Write demands.csv, prices.csv, totals.csv and cutdown.csv into `dir`
/// (created if missing) and return the four paths. One row per recorded slot
/// (cutdown.csv: one row per building), header first, LF line endings.
std::vector<std::filesystem::path> write_csv(const SimulationRecord& record,
                                             const std::filesystem::path& dir);

/// Debug dump of a mixing matrix, one row per line.
void write_weight_matrix_csv(const WeightMatrix& wm, const std::filesystem::path& path);

}  // namespace microgrid
