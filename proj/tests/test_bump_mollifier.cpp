#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chlab/bump.hpp"
#include "chlab/error.hpp"
#include "chlab/mollifier.hpp"
#include "chlab/spectral.hpp"

using namespace chlab;
using std::numbers::pi;

TEST_CASE("bump values") {
  CHECK(bump_value(kPhi, 0.0) == 1.0);
  CHECK(bump_value(kPhi, 1.0) == 1.0);
  CHECK(bump_value(kPhi, 2.0) == 0.0);
  CHECK(bump_value(kPhi, 2.5) == 0.0);
  const double v = bump_value(kPhi, 1.5);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(v == bump_value(kPhi, -1.5));
  CHECK(v == doctest::Approx(0.5));
  CHECK_THROWS_AS(validate(BumpSpec{2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(BumpSpec{0.0, 1.0}), InvalidArgument);
}

TEST_CASE("bump is exact on its plateau and outside its support") {
  const Grid g = make_grid(4.0, 1000);
  for (const BumpSpec spec : {kPhi, kPhiTilde}) {
    const Field b = make_bump(spec, g);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double x = std::abs(g.node(m));
      if (x <= spec.inner_radius) CHECK(b[m] == 1.0);
      if (x >= spec.outer_radius) CHECK(b[m] == 0.0);
    }
  }
  // phi~ = 1 wherever phi is nonzero.
  const Field phi = make_bump(kPhi, g), phit = make_bump(kPhiTilde, g);
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (phi[m] != 0.0) CHECK(phit[m] == 1.0);
  }
}

TEST_CASE("scale_bump") {
  const Grid g = make_grid(4.0, 512);
  const Field a = make_bump(kPhi, g);
  const Field b = scale_bump(kPhi, 1.0, g);
  for (std::size_t m = 0; m < g.size(); ++m) CHECK(a[m] == b[m]);
  CHECK_THROWS_AS(scale_bump(kPhi, 2.0, g), InvalidArgument);
  CHECK_THROWS_AS(scale_bump(kPhi, 0.0, g), InvalidArgument);
}

TEST_CASE("dilation scaling of bump norms") {
  const Grid unit = make_grid(8.0, 8192);
  const Field phi = make_bump(kPhi, unit);
  const double l2 = sobolev_norm(phi, 0.0);
  for (double lam : {4.0, 16.0}) {
    const double dil = std::pow(lam, 1.5);
    const Grid g = make_grid(4.0 * dil, 8192);
    const Field scaled = scale_bump(kPhi, dil, g);
    CHECK(sobolev_norm(scaled, 0.0) == doctest::Approx(std::sqrt(dil) * l2).epsilon(1e-6));
    for (double s : {0.5, 1.0, 2.0, 3.0}) {
      CHECK(sobolev_norm(scaled, s) <= std::sqrt(dil) * sobolev_norm(phi, s));
    }
  }
}

TEST_CASE("mollifier kernel") {
  CHECK(mollifier_kernel(1.0) == 0.0);
  CHECK(mollifier_kernel(-1.2) == 0.0);
  CHECK(mollifier_kernel(0.3) == mollifier_kernel(-0.3));
  double mass = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) mass += mollifier_kernel(-1.0 + (i + 0.5) * 2.0 / n) * 2.0 / n;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("mollifier preserves constants") {
  const Grid g = make_grid(pi, 128);
  const Field c = Field::constant(g, 3.25);
  const Field j = mollify(c, 0.3);
  for (std::size_t m = 0; m < g.size(); ++m) CHECK(j[m] == doctest::Approx(3.25).epsilon(1e-13));
  CHECK_THROWS_AS(mollify(c, g.dx()), InvalidArgument);
  CHECK_THROWS_AS(mollify(c, 10.0), InvalidArgument);
}

TEST_CASE("mollifier is an approximate identity and nonexpansive") {
  const Grid g = make_grid(10.0, 2048);
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x) * std::cos(3 * x); });
  double prev = 1e300;
  for (double eps : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
    const Field j = mollify(f, eps);
    const double err = l2_norm_quadrature(j - f);
    CHECK(err < prev);
    prev = err;
    for (double s : {0.0, 1.0, 2.0}) CHECK(sobolev_norm(j, s) <= sobolev_norm(f, s) * (1.0 + 1e-12));
  }
  CHECK(prev < 1e-2 * l2_norm_quadrature(f));
}
