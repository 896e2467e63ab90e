#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "chlab/approx.hpp"
#include "chlab/fit.hpp"
#include "chlab/solver.hpp"

namespace chlab {

struct LadderSpec {
  std::vector<double> lambdas{16.0, 32.0, 64.0, 128.0};
  double s = 2.0;
  double delta = 1.5;
  std::pair<double, double> omega_pair{1.0, -1.0};
  std::vector<double> t_samples{0.0, 0.25, 0.5, 0.75, 1.0};
  /// Grid-size multiplier applied on top of the sizing rule (resolution robustness reruns).
  int resolution = 1;
  std::size_t top_k = 3;
};

/// Throws InvalidArgument on an empty or non-increasing ladder, inadmissible (s, delta),
/// or t samples outside [0, 1].
void validate(const LadderSpec& spec);

/// One verdict line: `measured comparator threshold`.
struct Verdict {
  std::string id;
  double measured = 0.0;
  double threshold = 0.0;
  std::string comparator;  // "<=" or ">="
  bool pass = false;
  /// Acceptance criterion this verdict feeds.
  std::string criterion;
};

Verdict make_verdict(std::string id, double measured, std::string comparator, double threshold,
                     std::string criterion);

struct ReportRow {
  std::string experiment;
  double lambda = 0.0;
  double t = 0.0;
  std::string quantity;
  double measured = 0.0;
  /// Reference value or target exponent; NaN when there is none.
  double reference = 0.0;
};

struct ExperimentReport {
  std::string id;
  std::vector<ReportRow> rows;
  std::map<std::string, SlopeFit> fitted_slopes;
  std::vector<Verdict> verdicts;
  std::vector<ResidualReport> residuals;

  bool all_pass() const;
};

/// Columns: experiment,lambda,t,quantity,measured,reference.
void write_report_csv(const ExperimentReport& report, std::ostream& os);

/// Everything computed for one ladder rung: the two approximate solutions and the
/// two actual solutions started from their data.
struct LadderCell {
  LadderCell(double lam, const Grid& g) : lambda(lam), grid(g) {}
  double lambda;
  Grid grid;
  std::unique_ptr<ApproxSolution> approx_plus, approx_minus;
  Trajectory actual_plus, actual_minus;
  bool has_actual = false;
};

/// Lazily computed, shared ladder of cells. Cells are built on a worker pool, one
/// worker per lambda; each cell is immutable once built.
class LadderRun {
 public:
  LadderRun(LadderSpec spec, SolverConfig cfg, unsigned workers = 1);

  const LadderSpec& spec() const { return spec_; }
  const SolverConfig& solver_config() const { return cfg_; }

  /// Build every cell; with `with_actual` also run the actual solves.
  void prepare(bool with_actual);
  const LadderCell& cell(double lambda, bool with_actual);

 private:
  void build(LadderCell& cell, bool with_actual);

  LadderSpec spec_;
  SolverConfig cfg_;
  unsigned workers_;
  std::mutex mutex_;
  std::map<double, std::unique_ptr<LadderCell>> cells_;
  std::map<double, std::unique_ptr<std::mutex>> cell_locks_;
};

/// Per-term residual exponents (F_1..F_8) from the H^1 estimates.
std::vector<double> residual_term_exponents(double s, double delta);

/// Unit-scale L2 norm of phi.
double phi_l2_norm();

/// lambda^{-delta/2-s} |phi(x/lambda^delta) trig(lambda x - alpha)|_{H^s} / (|phi|_{L2}/sqrt 2).
double packet_norm_ratio(double lambda, double delta, double s, double alpha, bool use_sin, int resolution = 1);

/// sup|f| + sup|f_x| + sup|f_xx|.
double sup_sum(const Field& f);

ExperimentReport e1_norm_limit(const LadderSpec& spec);
ExperimentReport e2_residual_decay(LadderRun& run);
ExperimentReport e2_residual_decay(const LadderSpec& spec, const SolverConfig& cfg = {});
ExperimentReport e3_actual_vs_approx(LadderRun& run);
ExperimentReport e3_actual_vs_approx(const LadderSpec& spec, const SolverConfig& cfg);
ExperimentReport e4_interpolated_hs_decay(LadderRun& run);
ExperimentReport e4_interpolated_hs_decay(const LadderSpec& spec, const SolverConfig& cfg);
ExperimentReport e5_nonuniform_dependence(LadderRun& run);
ExperimentReport e5_nonuniform_dependence(const LadderSpec& spec, const SolverConfig& cfg);

}  // namespace chlab
