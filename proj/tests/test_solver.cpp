#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chlab/approx.hpp"
#include "chlab/bump.hpp"
#include "chlab/error.hpp"
#include "chlab/params.hpp"
#include "chlab/solver.hpp"
#include "chlab/spectral.hpp"

using namespace chlab;
using std::numbers::pi;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double e = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) e = std::max(e, std::abs(a[m] - b[m]));
  return e;
}

Field exact_mms(const Grid& g, double t) {
  return Field::sample(g, [t](double x) { return 0.5 * std::cos(t) / std::pow(std::cosh(x), 2); });
}

// Error at t = 1 for the forced problem whose exact solution is exact_mms.
double mms_error(std::size_t n, double dt) {
  const Grid g = make_grid(12.0, n);
  Forcing forcing = [&g](double t, std::span<double> out) {
    const Field u = exact_mms(g, t);
    const Field ut = Field::sample(g, [t](double x) { return -0.5 * std::sin(t) / std::pow(std::cosh(x), 2); });
    const Field rhs = ch_rhs(u);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = ut[m] - rhs[m];
  };
  SolverConfig cfg;
  cfg.cfl = 1.0;
  cfg.max_dt = dt;
  cfg.t_end = 1.0;
  cfg.record_every = 1.0;
  const Trajectory traj = solve(exact_mms(g, 0.0), cfg, 2.0, forcing);
  return l2_norm_quadrature(traj.at(1.0) - exact_mms(g, 1.0));
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.cfl = 0.0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = {};
  cfg.dealias_fraction = 0.4;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = {};
  cfg.t_end = 0.6;
  cfg.record_every = 0.25;
  const auto times = record_times(cfg);
  REQUIRE(times.size() == 4);
  CHECK(times[0] == 0.0);
  CHECK(times[1] == 0.25);
  CHECK(times[2] == 0.5);
  CHECK(times[3] == 0.6);
}

TEST_CASE("CH right-hand side on trivial states") {
  const Grid g = make_grid(pi, 64);
  CHECK(sup_norm(ch_rhs(Field::zeros(g))) == 0.0);
  CHECK(sup_norm(ch_rhs(Field::constant(g, 0.7))) == 0.0);
}

TEST_CASE("CH right-hand side on a single mode") {
  const Grid g = make_grid(pi, 64);
  const double a = 1e-3;
  for (int k : {1, 3, 5}) {
    const Field u = Field::sample(g, [&](double x) { return a * std::cos(k * x); });
    // -u u_x = (a^2 k / 2) sin 2kx.
    // u^2 + u_x^2 / 2 has the oscillating part (a^2/2 - a^2 k^2/4) cos 2kx, and
    // Lambda^{-1} cos 2kx = -(2k / (1 + 4k^2)) sin 2kx.
    const double c = a * a * k / 2.0 + (a * a / 2.0 - a * a * k * k / 4.0) * (2.0 * k / (1.0 + 4.0 * k * k));
    const Field expect = Field::sample(g, [&](double x) { return c * std::sin(2 * k * x); });
    CHECK(max_abs_diff(ch_rhs(u), expect) <= 1e-10 * std::max(std::abs(c), 1e-300) + 1e-22);
    CHECK(l2_norm_quadrature(ch_rhs(u) - expect) / l2_norm_quadrature(expect) < 1e-10);
  }
}

TEST_CASE("RK4 step on trivial states") {
  const Grid g = make_grid(pi, 32);
  CHECK(sup_norm(step_rk4(Field::zeros(g), 0.3)) == 0.0);
  const Field c = Field::constant(g, -1.25);
  CHECK(max_abs_diff(step_rk4(c, 0.3), c) == 0.0);
}

TEST_CASE("RK4 is fourth order (Richardson)") {
  const Grid g = make_grid(10.0, 256);
  const Field u0 = Field::sample(g, [](double x) { return 0.8 * std::exp(-x * x); });
  auto advance = [&](int steps) {
    Field u = u0;
    const double dt = 0.2 / steps;
    for (int i = 0; i < steps; ++i) u = step_rk4(u, dt, 2.0 / 3.0, {}, i * dt);
    return u;
  };
  const Field a = advance(4), b = advance(8), c = advance(16);
  const double ratio = l2_norm_quadrature(a - b) / l2_norm_quadrature(b - c);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("manufactured solution converges under joint dx, dt halving") {
  const double coarse = mms_error(128, 0.1);
  const double fine = mms_error(256, 0.05);
  INFO("coarse " << coarse << " fine " << fine);
  CHECK(coarse / fine >= 8.0);
  CHECK(fine < 1e-5);
}

TEST_CASE("constant and zero data are fixed points of solve") {
  const Grid g = make_grid(20.0, 128);
  SolverConfig cfg;
  for (double c : {0.0, 0.4, -2.0}) {
    const Trajectory traj = solve(Field::constant(g, c), cfg, 2.0);
    CHECK_FALSE(traj.blowup);
    REQUIRE(traj.states.size() == 5);
    for (const auto& s : traj.states) {
      for (std::size_t m = 0; m < g.size(); ++m) CHECK(s[m] == c);
    }
  }
}

TEST_CASE("low-frequency data obey the doubling bound") {
  const ApproxParams p{1.0, 32.0, 1.5, 2.0};
  const Grid g = grid_for(p.lambda, p.delta);
  const Trajectory traj = solve(low_freq_data(p, g), SolverConfig{}, 2.0);
  CHECK_FALSE(traj.blowup);
  const double h0 = traj.diagnostics.front().hs_norm;
  for (const auto& d : traj.diagnostics) {
    CHECK(d.hs_norm <= 2.0 * h0);
    CHECK(d.dealias_band_fraction <= 1e-8);
  }
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  CHECK(os.str().rfind("t,hs_norm,c1_norm,dt,blowup_flag\n", 0) == 0);
}

TEST_CASE("blow-up is reported, not thrown") {
  // Steep negative slope: the wave breaks and |u_x| grows well past its initial size.
  const Grid g = make_grid(10.0, 4096);
  const Field u0 = Field::sample(g, [](double x) { return -6.0 * x * std::exp(-x * x); });
  SolverConfig cfg;
  cfg.t_end = 3.0;
  cfg.blowup_c1_threshold = 40.0;
  const Trajectory traj = solve(u0, cfg, 2.0);
  CHECK(traj.blowup);
  CHECK(traj.times.back() < 3.0);
}

TEST_CASE("lifespan estimate") {
  const Grid g = make_grid(pi, 16);
  const Field u0 = Field::constant(g, 0.5 / std::sqrt(2 * pi));
  CHECK(lifespan_estimate(u0, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // T grows like lambda^{1 - delta/2} for the low-frequency data.
  auto t_of = [](double lam, double c) {
    const ApproxParams p{1.0, lam, 1.5, 2.0};
    return lifespan_estimate(low_freq_data(p, grid_for(lam, p.delta)), 2.0, c);
  };
  CHECK(t_of(64.0, 1.0) / t_of(16.0, 1.0) == doctest::Approx(std::pow(4.0, 0.25)).epsilon(0.02));
  // With c_s calibrated from the solve itself the estimate clears the unit interval by far.
  const ApproxParams p{1.0, 16.0, 1.5, 2.0};
  const Grid gl = grid_for(p.lambda, p.delta);
  SolverConfig cfg;
  cfg.record_every = 0.125;
  const double cs = energy_monitor(solve(low_freq_data(p, gl), cfg, 2.0), 2.0).empirical_cs;
  REQUIRE(cs > 0.0);
  CHECK(t_of(16.0, cs) > 10.0);
  CHECK_THROWS_AS(lifespan_estimate(Field::zeros(g), 2.0, 1.0), InvalidArgument);
}

TEST_CASE("energy monitor") {
  const Grid g = make_grid(10.0, 64);
  SolverConfig cfg;
  cfg.record_every = 0.25;
  const EnergyReport zero = energy_monitor(solve(Field::zeros(g), cfg, 2.0), 2.0);
  CHECK(zero.quotients.empty());
  CHECK(zero.empirical_cs == 0.0);

  const ApproxParams p{1.0, 16.0, 1.5, 2.0};
  const Grid gl = grid_for(p.lambda, p.delta);
  SolverConfig a;
  a.record_every = 0.125;
  SolverConfig b = a;
  b.max_dt = a.max_dt / 2;
  const EnergyReport ra = energy_monitor(solve(low_freq_data(p, gl), a, 2.0), 2.0);
  const EnergyReport rb = energy_monitor(solve(low_freq_data(p, gl), b, 2.0), 2.0);
  for (double q : ra.quotients) CHECK(std::isfinite(q));
  REQUIRE(ra.empirical_cs > 0.0);
  REQUIRE(rb.empirical_cs > 0.0);
  const double ratio = ra.empirical_cs / rb.empirical_cs;
  CHECK(ratio < 2.0);
  CHECK(ratio > 0.5);
}
