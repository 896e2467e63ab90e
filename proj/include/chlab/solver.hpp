#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chlab/field.hpp"

namespace chlab {

struct SolverConfig {
  double cfl = 0.3;
  double dealias_fraction = 2.0 / 3.0;
  double t_end = 1.0;
  double record_every = 0.25;
  double blowup_c1_threshold = 1e6;
  /// Upper bound on the step; the advective CFL alone allows O(lambda*dx) steps
  /// for small data, far longer than the O(1) phase period of the packets.
  double max_dt = 0.05;
};

/// Throws InvalidArgument for cfl outside (0,1], dealias_fraction outside (0.5,1], or
/// nonpositive t_end, record_every, max_dt, threshold.
void validate(const SolverConfig& cfg);

/// Sample times of a solve: 0, multiples of record_every below t_end, and t_end.
std::vector<double> record_times(const SolverConfig& cfg);

struct SampleDiagnostics {
  double t = 0.0;
  double hs_norm = 0.0;
  double c1_norm = 0.0;
  /// Last step taken before this sample (0 for the initial sample).
  double dt = 0.0;
  /// Share of spectral energy above dealias_fraction * k_max.
  double dealias_band_fraction = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<SampleDiagnostics> diagnostics;
  double s_monitor = 0.0;
  bool blowup = false;
  std::size_t steps = 0;

  std::optional<std::size_t> index_of(double t) const;
  /// State recorded at t. Throws InvalidArgument if t was not recorded.
  const Field& at(double t) const;
};

/// Reusable workspace evaluating the dealiased CH right-hand side
///   -u u_x - Lambda^{-1}[u^2 + (u_x)^2 / 2]
/// on one grid. Not safe for concurrent use; give each solve its own.
class ChOperator {
 public:
  ChOperator(const Grid& grid, double dealias_fraction);

  void evaluate(std::span<const double> u, std::span<double> out);
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  std::vector<double> mask_;
  std::vector<double> wavenumber_;
  ComplexBuffer u_hat_, scratch_, w1_hat_, w2_hat_;
  RealBuffer u_f_, u_x_, w1_, w2_;
};

Field ch_rhs(const Field& u, double dealias_fraction = 2.0 / 3.0);

/// Optional additive source G(t) written into `out` (used for manufactured solutions).
using Forcing = std::function<void(double t, std::span<double> out)>;

/// One classical RK4 step of du/dt = ch_rhs(u) (+ forcing).
Field step_rk4(const Field& u, double dt, double dealias_fraction = 2.0 / 3.0, const Forcing& forcing = {},
               double t = 0.0);

/// Integrate to cfg.t_end with dt = min(cfl*dx/max(|u|_inf, 1e-8), max_dt), landing exactly on
/// every multiple of record_every. Stops early with `blowup` set once the C^1 norm
/// exceeds the threshold.
Trajectory solve(const Field& u0, const SolverConfig& cfg, double s_monitor, const Forcing& forcing = {});

/// T = 1 / (2 c_s |u0|_{H^s}).
double lifespan_estimate(const Field& u0, double s_exp, double c_s_cal);

struct EnergyReport {
  std::vector<double> times;
  /// d/dt(|u|_{H^s}^2) / (|u|_{C^1} |u|_{H^s}^2) at interior samples.
  std::vector<double> quotients;
  std::vector<std::string> annotations;
  /// Half the largest |quotient|: the smallest c_s consistent with the energy inequality.
  double empirical_cs = 0.0;
};

EnergyReport energy_monitor(const Trajectory& traj, double s_exp);

/// CSV columns: t,hs_norm,c1_norm,dt,blowup_flag.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace chlab
