#include "chlab/approx.hpp"

#include <cmath>
#include <ostream>

#include "chlab/bump.hpp"
#include "chlab/carrier.hpp"
#include "chlab/csv.hpp"
#include "chlab/error.hpp"
#include "chlab/spectral.hpp"

namespace chlab {

namespace {

void require_resolved(const ApproxParams& p, const Grid& grid, double dealias_fraction) {
  if (p.lambda > dealias_fraction * grid.k_max() / 4.0) {
    throw InvalidArgument("carrier wavenumber " + format_double(p.lambda) +
                          " is not resolved: need lambda <= dealias_fraction * k_max / 4 = " +
                          format_double(dealias_fraction * grid.k_max() / 4.0));
  }
}

// A phi(x/lambda^delta) trig(lambda x - omega t), trig = sin if `use_sin` else cos.
Field packet(const ApproxParams& p, const Field& envelope, double t, bool use_sin) {
  const Grid& g = envelope.grid();
  const double amp = p.packet_amplitude();
  const double shift = p.omega * t;
  RealBuffer v(g.size());
  auto env = envelope.values();
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (env[m] == 0.0) {
      v[m] = 0.0;
      continue;
    }
    const double c = use_sin ? carrier_sin(g, m, p.lambda, shift) : carrier_cos(g, m, p.lambda, shift);
    v[m] = amp * env[m] * c;
  }
  return Field(g, std::move(v));
}

Field cos_packet(const ApproxParams& p, const Field& env, double t) { return packet(p, env, t, false); }

Field sin_packet(const ApproxParams& p, const Field& env, double t) { return packet(p, env, t, true); }

}  // namespace

Field high_freq(const ApproxParams& params, double t, const Grid& grid, double dealias_fraction) {
  require_resolved(params, grid, dealias_fraction);
  return cos_packet(params, scale_bump(kPhi, params.dilation(), grid), t);
}

Field low_freq_data(const ApproxParams& params, const Grid& grid) {
  return (params.omega / params.lambda) * scale_bump(kPhiTilde, params.dilation(), grid);
}

Trajectory low_freq(const ApproxParams& params, const SolverConfig& cfg, const Grid& grid) {
  validate(params);
  if (cfg.t_end > 1.0) throw InvalidArgument("low-frequency solve is only claimed on [0, 1]");
  auto traj = solve(low_freq_data(params, grid), cfg, params.s);
  if (traj.blowup) {
    throw Error("low-frequency solve blew up at t = " + format_double(traj.times.back()) + " for lambda = " +
                format_double(params.lambda) + "; the grid is under-resolved");
  }
  return traj;
}

namespace {

const ApproxParams& checked(const ApproxParams& params, const Grid& grid, const SolverConfig& cfg) {
  validate(params);
  validate(cfg);
  require_resolved(params, grid, cfg.dealias_fraction);
  return params;
}

}  // namespace

ApproxSolution::ApproxSolution(const ApproxParams& params, const Grid& grid, const SolverConfig& cfg)
    : params_(checked(params, grid, cfg)),
      grid_(grid),
      cfg_(cfg),
      envelope_(scale_bump(kPhi, params.dilation(), grid)),
      envelope_dx_(derivative(envelope_)),
      low_(low_freq(params, cfg, grid)) {}

Field ApproxSolution::high(double t) const { return cos_packet(params_, envelope_, t); }

std::array<Field, 8> residual_terms(const ApproxSolution& ap, double t) {
  const auto& p = ap.params();
  const Field& u0 = ap.low(0.0);
  const Field& ul = ap.low(t);
  const Field uh = ap.high(t);
  const Field sin_part = sin_packet(p, ap.envelope(), t);
  const double amp = p.packet_amplitude();

  // d_x u^h = -lambda A phi sin + A d_x[phi(x/lambda^delta)] cos.
  const Grid& g = ap.grid();
  RealBuffer dx_env_cos(g.size());
  {
    auto d = ap.envelope_dx().values();
    for (std::size_t m = 0; m < dx_env_cos.size(); ++m) {
      dx_env_cos[m] = d[m] == 0.0 ? 0.0 : amp * d[m] * carrier_cos(g, m, p.lambda, p.omega * t);
    }
  }
  const Field envelope_slope(g, std::move(dx_env_cos));
  const Field uh_x = (-p.lambda) * sin_part + envelope_slope;
  const Field ul_x = derivative(ul);

  return {
      p.lambda * ((u0 - ul) * sin_part),
      ul * envelope_slope,
      uh * ul_x,
      uh * uh_x,
      lambda_inv_apply(2.0 * (ul * uh)),
      lambda_inv_apply(uh * uh),
      lambda_inv_apply(ul_x * uh_x),
      lambda_inv_apply(0.5 * (uh_x * uh_x)),
  };
}

namespace {

Field direct_with(const ApproxSolution& ap, double t, const Field& dt_low) {
  const auto& p = ap.params();
  const double frac = ap.solver_config().dealias_fraction;
  const Field dt_high = p.omega * sin_packet(p, ap.envelope(), t);
  // ch_rhs(u) = -(u u_x + Lambda^{-1}[u^2 + u_x^2/2]).
  return dt_high + dt_low - ch_rhs(ap.total(t), frac);
}

}  // namespace

Field residual_direct(const ApproxSolution& ap, double t) {
  return direct_with(ap, t, ch_rhs(ap.low(t), ap.solver_config().dealias_fraction));
}

Field residual_direct_fd(const ApproxSolution& ap, double t, double dt_probe) {
  return direct_with(ap, t, time_derivative_fd(ap.low_trajectory(), t, dt_probe));
}

Field time_derivative_fd(const Trajectory& traj, double t, double dt_probe) {
  if (!(dt_probe > 0.0)) throw InvalidArgument("probe step must be positive");
  auto pick = [&](double tau) -> const Field& {
    if (!traj.index_of(tau)) {
      throw InvalidArgument("probe time " + format_double(tau) + " is outside the recorded samples");
    }
    return traj.at(tau);
  };
  const Field& m2 = pick(t - 2.0 * dt_probe);
  const Field& m1 = pick(t - dt_probe);
  const Field& p1 = pick(t + dt_probe);
  const Field& p2 = pick(t + 2.0 * dt_probe);
  return (1.0 / (12.0 * dt_probe)) * ((m2 - p2) + 8.0 * (p1 - m1));
}

ResidualReport residual_h1(const ApproxSolution& ap, double t) {
  const auto& p = ap.params();
  ResidualReport r;
  r.lambda = p.lambda;
  r.delta = p.delta;
  r.s = p.s;
  r.t = t;
  const auto terms = residual_terms(ap, t);
  Field sum = terms[0];
  for (std::size_t j = 0; j < terms.size(); ++j) {
    r.h1_terms[j] = sobolev_norm(terms[j], 1.0);
    if (j > 0) sum = sum + terms[j];
  }
  const Field direct = residual_direct(ap, t);
  r.h1_sum = sobolev_norm(sum, 1.0);
  r.h1_direct = sobolev_norm(direct, 1.0);
  r.rel_gap = sobolev_norm(direct - sum, 1.0) / std::max(r.h1_sum, 1e-300);
  return r;
}

void write_residual_csv_header(std::ostream& os) {
  os << "lambda,delta,s,t";
  for (int j = 1; j <= 8; ++j) os << ",f" << j << "_h1";
  os << ",sum_h1,direct_h1,rel_gap\n";
}

void write_residual_csv_row(const ResidualReport& r, std::ostream& os) {
  std::vector<std::string> cells{format_double(r.lambda), format_double(r.delta), format_double(r.s),
                                 format_double(r.t)};
  for (double v : r.h1_terms) cells.push_back(format_double(v));
  cells.push_back(format_double(r.h1_sum));
  cells.push_back(format_double(r.h1_direct));
  cells.push_back(format_double(r.rel_gap));
  os << csv_row(cells) << '\n';
}

}  // namespace chlab
