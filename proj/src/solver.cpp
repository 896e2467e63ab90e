#include "chlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "chlab/csv.hpp"
#include "chlab/error.hpp"
#include "chlab/spectral.hpp"

namespace chlab {

void validate(const SolverConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw InvalidArgument("solver.cfl must lie in (0, 1]");
  if (!(cfg.dealias_fraction > 0.5 && cfg.dealias_fraction <= 1.0)) {
    throw InvalidArgument("solver.dealias_fraction must lie in (0.5, 1]");
  }
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw InvalidArgument("solver.t_end must be positive");
  if (!(cfg.record_every > 0.0)) throw InvalidArgument("solver.record_every must be positive");
  if (!(cfg.blowup_c1_threshold > 0.0)) throw InvalidArgument("solver.blowup_c1_threshold must be positive");
  if (!(cfg.max_dt > 0.0)) throw InvalidArgument("solver.max_dt must be positive");
}

std::optional<std::size_t> Trajectory::index_of(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
  }
  return std::nullopt;
}

const Field& Trajectory::at(double t) const {
  auto i = index_of(t);
  if (!i) throw InvalidArgument("time " + format_double(t) + " is not a recorded sample");
  return states[*i];
}

ChOperator::ChOperator(const Grid& grid, double dealias_fraction) : grid_(grid) {
  const std::size_t nb = grid.spectrum_size();
  const double cut = dealias_fraction * grid.k_max();
  mask_.resize(nb);
  wavenumber_.resize(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    wavenumber_[j] = grid.wavenumber(j);
    mask_[j] = wavenumber_[j] <= cut ? 1.0 : 0.0;
  }
  // Odd symbols have no real Nyquist representation.
  mask_.back() = 0.0;
  u_hat_.resize(nb);
  scratch_.resize(nb);
  w1_hat_.resize(nb);
  w2_hat_.resize(nb);
  u_f_.resize(grid.size());
  u_x_.resize(grid.size());
  w1_.resize(grid.size());
  w2_.resize(grid.size());
}

void ChOperator::evaluate(std::span<const double> u, std::span<double> out) {
  const std::size_t nb = u_hat_.size();
  const std::size_t n = grid_.size();
  fft_forward(u, u_hat_);
  for (std::size_t j = 0; j < nb; ++j) u_hat_[j] *= mask_[j];

  std::copy(u_hat_.begin(), u_hat_.end(), scratch_.begin());
  fft_inverse_destructive(scratch_, u_f_);
  for (std::size_t j = 0; j < nb; ++j) scratch_[j] = std::complex<double>(0.0, wavenumber_[j]) * u_hat_[j];
  fft_inverse_destructive(scratch_, u_x_);

  for (std::size_t m = 0; m < n; ++m) {
    const double uf = u_f_[m];
    const double ux = u_x_[m];
    w1_[m] = uf * ux;
    w2_[m] = uf * uf + 0.5 * ux * ux;
  }
  fft_forward(w1_, w1_hat_);
  fft_forward(w2_, w2_hat_);
  for (std::size_t j = 0; j < nb; ++j) {
    const double k = wavenumber_[j];
    const std::complex<double> nonlocal(0.0, k / (1.0 + k * k));
    scratch_[j] = -mask_[j] * (w1_hat_[j] + nonlocal * w2_hat_[j]);
  }
  fft_inverse_destructive(scratch_, out);
}

Field ch_rhs(const Field& u, double dealias_fraction) {
  require_finite(u, "ch_rhs input");
  ChOperator op(u.grid(), dealias_fraction);
  RealBuffer out(u.size());
  op.evaluate(u.values(), out);
  Field result(u.grid(), std::move(out));
  require_finite(result, "ch_rhs output");
  return result;
}

namespace {

struct Rk4Workspace {
  RealBuffer k1, k2, k3, k4, stage, force;
  explicit Rk4Workspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), stage(n), force(n) {}
};

void rhs_with_forcing(ChOperator& op, std::span<const double> u, double t, const Forcing& forcing,
                      RealBuffer& force, std::span<double> out) {
  op.evaluate(u, out);
  if (forcing) {
    forcing(t, force);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] += force[m];
  }
}

void rk4_advance(ChOperator& op, RealBuffer& u, double t, double dt, const Forcing& forcing, Rk4Workspace& w) {
  const std::size_t n = u.size();
  rhs_with_forcing(op, u, t, forcing, w.force, w.k1);
  for (std::size_t m = 0; m < n; ++m) w.stage[m] = u[m] + 0.5 * dt * w.k1[m];
  rhs_with_forcing(op, w.stage, t + 0.5 * dt, forcing, w.force, w.k2);
  for (std::size_t m = 0; m < n; ++m) w.stage[m] = u[m] + 0.5 * dt * w.k2[m];
  rhs_with_forcing(op, w.stage, t + 0.5 * dt, forcing, w.force, w.k3);
  for (std::size_t m = 0; m < n; ++m) w.stage[m] = u[m] + dt * w.k3[m];
  rhs_with_forcing(op, w.stage, t + dt, forcing, w.force, w.k4);
  for (std::size_t m = 0; m < n; ++m) {
    u[m] += dt / 6.0 * (w.k1[m] + 2.0 * w.k2[m] + 2.0 * w.k3[m] + w.k4[m]);
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<double> record_times(const SolverConfig& cfg) {
  std::vector<double> times{0.0};
  for (int k = 1;; ++k) {
    const double t = k * cfg.record_every;
    if (t >= cfg.t_end * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(cfg.t_end);
  return times;
}

Field step_rk4(const Field& u, double dt, double dealias_fraction, const Forcing& forcing, double t) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  require_finite(u, "step_rk4 input");
  ChOperator op(u.grid(), dealias_fraction);
  Rk4Workspace w(u.size());
  RealBuffer state = u.copy_values();
  rk4_advance(op, state, t, dt, forcing, w);
  if (!all_finite(state)) throw NonFiniteError("non-finite state after RK4 step");
  return Field(u.grid(), std::move(state));
}

Trajectory solve(const Field& u0, const SolverConfig& cfg, double s_monitor, const Forcing& forcing) {
  validate(cfg);
  require_finite(u0, "initial data");
  const Grid& grid = u0.grid();
  ChOperator op(grid, cfg.dealias_fraction);
  Rk4Workspace w(grid.size());

  Trajectory traj;
  traj.s_monitor = s_monitor;
  auto record = [&](double t, const Field& state, double dt_used) {
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.diagnostics.push_back({t, sobolev_norm(state, s_monitor), c1_norm(state), dt_used,
                                band_energy_fraction(state, cfg.dealias_fraction)});
  };
  record(0.0, u0, 0.0);

  const auto targets = record_times(cfg);
  RealBuffer u = u0.copy_values();
  double t = 0.0;
  double last_dt = 0.0;
  for (std::size_t next = 1; next < targets.size(); ++next) {
    const double target = targets[next];
    while (t < target) {
      double amp = 0.0;
      for (double v : u) amp = std::max(amp, std::abs(v));
      double dt = std::min(cfg.cfl * grid.dx() / std::max(amp, 1e-8), cfg.max_dt);
      bool lands = false;
      if (target - t <= dt * (1.0 + 1e-9)) {
        dt = target - t;
        lands = true;
      }
      rk4_advance(op, u, t, dt, forcing, w);
      ++traj.steps;
      if (!all_finite(u)) throw NonFiniteError("non-finite state at t = " + format_double(t + dt));
      t = lands ? target : t + dt;
      last_dt = dt;

      Field current(grid, u);
      if (c1_norm(current) > cfg.blowup_c1_threshold) {
        traj.blowup = true;
        record(t, current, last_dt);
        return traj;
      }
      if (lands) record(t, current, last_dt);
    }
  }
  return traj;
}

double lifespan_estimate(const Field& u0, double s_exp, double c_s_cal) {
  if (!(c_s_cal > 0.0)) throw InvalidArgument("calibrated c_s must be positive");
  const double norm = sobolev_norm(u0, s_exp);
  if (!(norm > 0.0)) throw InvalidArgument("lifespan estimate needs nonzero initial data");
  return 1.0 / (2.0 * c_s_cal * norm);
}

EnergyReport energy_monitor(const Trajectory& traj, double s_exp) {
  EnergyReport report;
  const std::size_t n = traj.states.size();
  if (n < 3) throw InvalidArgument("energy monitor needs at least three samples");
  std::vector<double> energy(n), c1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hs = std::abs(s_exp - traj.s_monitor) < 1e-15 ? traj.diagnostics[i].hs_norm
                                                                : sobolev_norm(traj.states[i], s_exp);
    energy[i] = hs * hs;
    c1[i] = traj.diagnostics[i].c1_norm;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(energy[i] > 0.0) || !(c1[i] > 0.0)) {
      report.annotations.push_back("skipped degenerate sample at t = " + format_double(traj.times[i]));
      continue;
    }
    const double rate = (energy[i + 1] - energy[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
    const double q = rate / (c1[i] * energy[i]);
    report.times.push_back(traj.times[i]);
    report.quotients.push_back(q);
    report.empirical_cs = std::max(report.empirical_cs, 0.5 * std::abs(q));
  }
  return report;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,hs_norm,c1_norm,dt,blowup_flag\n";
  for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
    const auto& d = traj.diagnostics[i];
    const bool flag = traj.blowup && i + 1 == traj.diagnostics.size();
    os << csv_row({format_double(d.t), format_double(d.hs_norm), format_double(d.c1_norm), format_double(d.dt),
                   flag ? "1" : "0"})
       << '\n';
  }
}

}  // namespace chlab
