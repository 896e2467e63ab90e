#pragma once

#include <string>
#include <vector>

#include "chlab/error.hpp"
#include "chlab/experiments.hpp"
#include "chlab/solver.hpp"

namespace chlab {

/// Parse failure; `line()` is 1-based, 0 when the problem is not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line) : Error(format(msg, line)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string format(const std::string& msg, int line) {
    return line > 0 ? "line " + std::to_string(line) + ": " + msg : msg;
  }
  int line_;
};

struct RunConfig {
  std::vector<std::string> experiments{"e1", "e2", "e3", "e4", "e5"};
  LadderSpec ladder;
  SolverConfig solver;
  std::string output_dir = "chlab-out";
  unsigned workers = 0;  // 0: available parallelism
};

/// Parses `key = value` lines. Keys are dotted (`solver.cfl`) or grouped under
/// `[solver]` section headers; `#` starts a comment. Unset keys keep defaults.
RunConfig parse_config(const std::string& text);

/// Inverse of parse_config: every key written explicitly.
std::string serialize_config(const RunConfig& cfg);

/// Validate cross-field constraints (same checks parse_config runs at the end).
void validate(const RunConfig& cfg);

/// "all" or a comma list of e1..e5, normalized to sorted unique ids.
std::vector<std::string> parse_experiment_list(const std::string& text);

unsigned effective_workers(const RunConfig& cfg);

}  // namespace chlab
