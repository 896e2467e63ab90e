#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <sstream>

#include "chlab/approx.hpp"
#include "chlab/error.hpp"
#include "chlab/params.hpp"
#include "chlab/spectral.hpp"

using namespace chlab;

namespace {

SolverConfig short_run(double t_end = 0.5) {
  SolverConfig cfg;
  cfg.t_end = t_end;
  return cfg;
}

}  // namespace

TEST_CASE("exponents") {
  CHECK(residual_exponent(2.0, 1.5) == 1.25);
  CHECK(sup_exponent(2.0, 1.5) == 0.25);
  CHECK(hs_difference_exponent(2.0, 1.5) == 0.0625);
  CHECK(check_regularity(2.0, 1.5).empty());
  CHECK(check_regularity(1.2, 1.5).find("s > 3/2") != std::string::npos);
  CHECK(check_regularity(2.0, 2.5).find("delta") != std::string::npos);
  CHECK_THROWS_AS(validate(ApproxParams{1.0, 16.0, 0.5, 2.0}), InvalidArgument);
}

TEST_CASE("grid sizing rule") {
  const Grid g = grid_for(16.0, 1.5);
  CHECK(g.half_length() == doctest::Approx(256.0));
  CHECK(g.k_max() >= 8.0 * 16.0);
  CHECK(is_smooth_size(g.size()));
  const Grid g2 = grid_for(16.0, 1.5, 2);
  CHECK(g2.size() == 2 * g.size());
  CHECK(g2.half_length() == g.half_length());
}

TEST_CASE("high-frequency packet") {
  const ApproxParams p{1.0, 16.0, 1.5, 2.0};
  const Grid g = grid_for(p.lambda, p.delta);
  const Field uh = high_freq(p, 0.0, g);
  const double amp = std::pow(16.0, -0.75 - 2.0);
  std::size_t origin = 0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (std::abs(g.node(m)) < std::abs(g.node(origin))) origin = m;
  }
  REQUIRE(g.node(origin) == 0.0);
  CHECK(uh[origin] == doctest::Approx(amp).epsilon(1e-14));
  CHECK(sup_norm(uh) <= amp * (1.0 + 1e-14));
  for (double t : {0.3, 1.0}) CHECK(sup_norm(high_freq(p, t, g)) <= amp * (1.0 + 1e-14));
  CHECK_THROWS_AS(high_freq(p, 0.0, make_grid(256.0, 4096)), InvalidArgument);
}

TEST_CASE("approximate solution invariants") {
  const ApproxParams p{-1.0, 16.0, 1.5, 2.0};
  const Grid g = grid_for(p.lambda, p.delta);
  const ApproxSolution ap(p, g, short_run());
  const Field data = low_freq_data(p, g);
  for (std::size_t m = 0; m < g.size(); ++m) REQUIRE(ap.low(0.0)[m] == data[m]);
  CHECK_THROWS_AS(ap.low(0.3), InvalidArgument);
  const Field sum = ap.total(0.25);
  CHECK(sup_norm(sum - ap.low(0.25) - ap.high(0.25)) <= 1e-16);
}

TEST_CASE("first residual term vanishes at t = 0") {
  const ApproxParams p{1.0, 16.0, 1.5, 2.0};
  const ApproxSolution ap(p, grid_for(p.lambda, p.delta), short_run());
  const auto f = residual_terms(ap, 0.0);
  CHECK(sup_norm(f[0]) == 0.0);
  CHECK(sup_norm(residual_terms(ap, 0.5)[0]) >= 0.0);
}

TEST_CASE("omega = 0 keeps only the pure high-frequency terms") {
  const ApproxParams p{0.0, 16.0, 1.5, 2.0};
  const Grid g = grid_for(p.lambda, p.delta);
  const ApproxSolution ap(p, g, short_run());
  CHECK(sup_norm(ap.low(0.5)) == 0.0);
  const auto f = residual_terms(ap, 0.5);
  for (int j : {0, 1, 2, 4, 6}) CHECK(sup_norm(f[j]) == 0.0);
  const Field direct = residual_direct(ap, 0.5);
  const Field expect = f[3] + f[5] + f[7];
  CHECK(sobolev_norm(direct - expect, 1.0) / sobolev_norm(expect, 1.0) <= 1e-6);
}

TEST_CASE("decomposition matches direct substitution") {
  for (double w : {1.0, -1.0}) {
    const ApproxParams p{w, 16.0, 1.5, 2.0};
    const ApproxSolution ap(p, grid_for(p.lambda, p.delta), short_run());
    for (double t : {0.0, 0.25, 0.5}) {
      const auto r = residual_h1(ap, t);
      INFO("omega " << w << " t " << t << " gap " << r.rel_gap);
      CHECK(r.rel_gap <= 1e-6);
      CHECK(r.h1_direct == doctest::Approx(r.h1_sum).epsilon(1e-6));
      CHECK(r.h1_direct > 0.0);
    }
  }
}

TEST_CASE("finite-difference time derivative matches the equation") {
  const ApproxParams p{1.0, 16.0, 1.5, 2.0};
  SolverConfig cfg = short_run();
  cfg.record_every = 0.03125;
  const ApproxSolution ap(p, grid_for(p.lambda, p.delta), cfg);
  const Field fd = time_derivative_fd(ap.low_trajectory(), 0.25, 0.03125);
  const Field eq = ch_rhs(ap.low(0.25));
  CHECK(l2_norm_quadrature(fd - eq) / l2_norm_quadrature(eq) < 1e-6);
  CHECK_THROWS_AS(time_derivative_fd(ap.low_trajectory(), 0.03125, 0.03125), InvalidArgument);

  const Field direct = residual_direct(ap, 0.25);
  const Field direct_fd = residual_direct_fd(ap, 0.25, 0.03125);
  CHECK(sobolev_norm(direct_fd - direct, 1.0) / sobolev_norm(direct, 1.0) < 1e-3);
}

TEST_CASE("residual CSV") {
  const ApproxParams p{1.0, 16.0, 1.5, 2.0};
  const ApproxSolution ap(p, grid_for(p.lambda, p.delta), short_run(0.25));
  std::ostringstream os;
  write_residual_csv_header(os);
  write_residual_csv_row(residual_h1(ap, 0.25), os);
  const std::string text = os.str();
  CHECK(text.rfind("lambda,delta,s,t,f1_h1,f2_h1,f3_h1,f4_h1,f5_h1,f6_h1,f7_h1,f8_h1,sum_h1,direct_h1,rel_gap\n", 0) ==
        0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
