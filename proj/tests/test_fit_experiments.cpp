#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "chlab/error.hpp"
#include "chlab/experiments.hpp"
#include "chlab/fit.hpp"
#include "chlab/params.hpp"

using namespace chlab;

namespace {

std::vector<std::pair<double, double>> ladder_of(double (*f)(double)) {
  std::vector<std::pair<double, double>> pts;
  for (double lam : {16.0, 32.0, 64.0, 128.0}) pts.emplace_back(lam, f(lam));
  return pts;
}

const Verdict* find(const ExperimentReport& rep, const std::string& id) {
  for (const auto& v : rep.verdicts) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

LadderSpec tiny_ladder() {
  LadderSpec spec;
  spec.lambdas = {8.0, 16.0, 32.0};
  spec.t_samples = {0.0, 0.5, 1.0};
  return spec;
}

SolverConfig half_unit() {
  SolverConfig cfg;
  cfg.record_every = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("slope of an exact power law") {
  const auto fit = fit_slope(ladder_of([](double l) { return 3.0 * std::pow(l, -2.0); }));
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(fit.slope + 2.0) <= 1e-12);
  CHECK(fit.std_error < 1e-12);
  CHECK(fit.used == 3);
}

TEST_CASE("slope of constant values is zero") {
  const auto fit = fit_slope(ladder_of([](double) { return 0.7; }));
  CHECK(std::abs(fit.slope) < 1e-14);
}

TEST_CASE("slope with a transient correction") {
  const auto fit = fit_slope(ladder_of([](double l) { return std::pow(l, -2.0) * (1.0 + 5.0 / l); }), 3);
  CHECK(std::abs(fit.slope + 2.0) <= 0.1);
  CHECK(fit.std_error > 0.0);
}

TEST_CASE("slope fit uses the largest lambdas and rejects bad input") {
  std::vector<std::pair<double, double>> pts{{128.0, 1.0 / 128}, {2.0, 100.0}, {64.0, 1.0 / 64}, {32.0, 1.0 / 32}};
  CHECK(fit_slope(pts, 3).slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope({{16.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(fit_slope({{16.0, 1.0}, {32.0, 0.0}}), InvalidArgument);
}

TEST_CASE("verdict comparators") {
  CHECK(make_verdict("a", 1.0, "<=", 1.0, "1").pass);
  CHECK_FALSE(make_verdict("a", 1.0, "<", 1.0, "1").pass);
  CHECK(make_verdict("a", 2.0, ">=", 1.0, "1").pass);
  CHECK_FALSE(make_verdict("a", std::nan(""), "<=", 1.0, "1").pass);
  CHECK_THROWS_AS(make_verdict("a", 1.0, "==", 1.0, "1"), InvalidArgument);
}

TEST_CASE("ladder validation") {
  LadderSpec spec;
  CHECK_NOTHROW(validate(spec));
  spec.lambdas = {32.0, 16.0};
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
  spec = {};
  spec.t_samples = {0.0, 1.5};
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
  spec = {};
  spec.delta = 2.5;
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
}

TEST_CASE("exponent tables") {
  const auto e = residual_term_exponents(2.0, 1.5);
  REQUIRE(e.size() == 8);
  const double expect[] = {-1.25, -3.5, -2.0, -2.75, -3.0, -4.75, -2.0, -2.75};
  for (std::size_t j = 0; j < 8; ++j) CHECK(e[j] == doctest::Approx(expect[j]));
}

TEST_CASE("packet norm ratio approaches one") {
  const double r16 = packet_norm_ratio(16.0, 1.5, 2.0, 0.0, false);
  const double r32 = packet_norm_ratio(32.0, 1.5, 2.0, 0.0, false);
  CHECK(std::abs(r32 - 1.0) < std::abs(r16 - 1.0));
  CHECK(std::abs(r32 - 1.0) < 0.02);
  CHECK(packet_norm_ratio(32.0, 1.5, 2.0, 0.7, true) == doctest::Approx(r32).epsilon(1e-3));
}

TEST_CASE("e1 on a short ladder") {
  LadderSpec spec;
  spec.lambdas = {8.0, 16.0};
  const auto rep = e1_norm_limit(spec);
  CHECK(rep.id == "e1");
  REQUIRE(find(rep, "e1.limit.cos_a0") != nullptr);
  CHECK(find(rep, "e1.limit.cos_a0")->pass);
  CHECK(find(rep, "e1.sin_cos_agreement")->pass);
  std::ostringstream os;
  write_report_csv(rep, os);
  CHECK(os.str().rfind("experiment,lambda,t,quantity,measured,reference\n", 0) == 0);
}

TEST_CASE("e2 to e5 on a tiny ladder") {
  LadderRun run(tiny_ladder(), half_unit(), 1);
  const auto e2 = e2_residual_decay(run);
  REQUIRE(find(e2, "e2.decomposition_identity") != nullptr);
  CHECK(find(e2, "e2.decomposition_identity")->pass);
  CHECK(find(e2, "e2.low_no_blowup")->pass);
  CHECK(find(e2, "e2.low_doubling")->pass);
  CHECK(e2.residuals.size() == 3 * 2 * 3);

  const auto e3 = e3_actual_vs_approx(run);
  REQUIRE(find(e3, "e3.v_zero_at_t0") != nullptr);
  CHECK(find(e3, "e3.v_zero_at_t0")->measured == 0.0);

  const auto e4 = e4_interpolated_hs_decay(run);
  REQUIRE(find(e4, "e4.interpolation_inequality") != nullptr);
  CHECK(find(e4, "e4.interpolation_inequality")->pass);

  const auto e5 = e5_nonuniform_dependence(run);
  REQUIRE(find(e5, "e5.d0_identity") != nullptr);
  CHECK(find(e5, "e5.d0_identity")->pass);
  CHECK(find(e5, "e5.triangle_consistency")->pass);
  CHECK(find(e5, "e5.d0_monotone")->pass);
  for (const auto* rep : {&e2, &e3, &e4, &e5}) {
    for (const auto& v : rep->verdicts) CHECK_FALSE(v.criterion.empty());
  }
}

TEST_CASE("parallel ladder builds match serial ones") {
  const auto serial = e2_residual_decay(tiny_ladder(), half_unit());
  LadderRun run(tiny_ladder(), half_unit(), 3);
  const auto parallel = e2_residual_decay(run);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].quantity == parallel.rows[i].quantity);
    CHECK(serial.rows[i].measured == parallel.rows[i].measured);
  }
}
