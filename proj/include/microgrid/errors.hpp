#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace microgrid {

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iterative method exhausted its budget; `residual` is the remaining
// off-diagonal norm (eigensolver) or disagreement (averaging).
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual;
};

struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
  int line;
};

struct ValidationError : std::runtime_error {
  ValidationError(std::string key_, const std::string& reason)
      : std::runtime_error(key_ + ": " + reason), key(std::move(key_)) {}
  std::string key;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace microgrid
