#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chlab/config.hpp"
#include "chlab/experiments.hpp"

namespace chlab {

struct RunResult {
  /// 0 iff every selected experiment completed and every verdict passed.
  int exit_status = 1;
  bool complete = false;
  std::string error;
  std::vector<Verdict> verdicts;
  std::vector<ExperimentReport> reports;
  /// Paths relative to the output directory.
  std::vector<std::string> files;
};

/// Runs the selected experiments and writes into cfg.output_dir:
///   eN.csv, residuals.csv (e2), trajectories/*.csv, plots/*.dat,
///   summary.csv (verdict_id,measured,threshold,comparator,pass) and MANIFEST.
/// An unwritable output directory throws before any computation starts.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Summary CSV for a list of verdicts.
void write_summary_csv(const std::vector<Verdict>& verdicts, std::ostream& os);

}  // namespace chlab
