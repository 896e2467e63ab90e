#pragma once

#include <array>
#include <iosfwd>

#include "chlab/field.hpp"
#include "chlab/params.hpp"
#include "chlab/solver.hpp"

namespace chlab {

/// High-frequency packet u^h(x,t) = lambda^{-delta/2-s} phi(x/lambda^delta) cos(lambda x - omega t).
/// Throws unless lambda <= dealias_fraction * k_max / 4.
Field high_freq(const ApproxParams& params, double t, const Grid& grid, double dealias_fraction = 2.0 / 3.0);

/// Low-frequency initial data omega lambda^{-1} phi~(x/lambda^delta).
Field low_freq_data(const ApproxParams& params, const Grid& grid);

/// CH solve from low_freq_data. A blow-up flag is escalated to an Error since the
/// exact solution is smooth on [0, 1]; seeing one means the grid is under-resolved.
Trajectory low_freq(const ApproxParams& params, const SolverConfig& cfg, const Grid& grid);

/// u^{omega,lambda} = u_l + u^h with u_l taken from a recorded low-frequency solve.
class ApproxSolution {
 public:
  ApproxSolution(const ApproxParams& params, const Grid& grid, const SolverConfig& cfg);

  const ApproxParams& params() const { return params_; }
  const Grid& grid() const { return grid_; }
  const SolverConfig& solver_config() const { return cfg_; }
  const Trajectory& low_trajectory() const { return low_; }

  /// phi(x/lambda^delta) and its x-derivative (spectral).
  const Field& envelope() const { return envelope_; }
  const Field& envelope_dx() const { return envelope_dx_; }

  Field high(double t) const;
  /// u_l at a recorded time.
  const Field& low(double t) const { return low_.at(t); }
  Field total(double t) const { return low(t) + high(t); }

 private:
  ApproxParams params_;
  Grid grid_;
  SolverConfig cfg_;
  Field envelope_;
  Field envelope_dx_;
  Trajectory low_;
};

/// The eight residual contributions F_1..F_8 at a recorded time.
std::array<Field, 8> residual_terms(const ApproxSolution& ap, double t);

/// CH operator applied to u^{omega,lambda}: d_t u^h + d_t u_l + u u_x + Lambda^{-1}[u^2 + u_x^2/2],
/// with d_t u_l taken from the equation u_l solves.
Field residual_direct(const ApproxSolution& ap, double t);

/// Same, but d_t u_l from fourth-order central differences of the recorded
/// trajectory at t +- dt_probe, t +- 2 dt_probe.
Field residual_direct_fd(const ApproxSolution& ap, double t, double dt_probe);

/// Fourth-order central difference of a trajectory in time.
Field time_derivative_fd(const Trajectory& traj, double t, double dt_probe);

struct ResidualReport {
  double lambda = 0.0;
  double delta = 0.0;
  double s = 0.0;
  double t = 0.0;
  std::array<double, 8> h1_terms{};
  double h1_sum = 0.0;
  double h1_direct = 0.0;
  /// |direct - sum of terms|_{H^1} / max(|sum|_{H^1}, 1e-300).
  double rel_gap = 0.0;
};

ResidualReport residual_h1(const ApproxSolution& ap, double t);

/// CSV header: lambda,delta,s,t,f1_h1,...,f8_h1,sum_h1,direct_h1,rel_gap.
void write_residual_csv_header(std::ostream& os);
void write_residual_csv_row(const ResidualReport& r, std::ostream& os);

}  // namespace chlab
