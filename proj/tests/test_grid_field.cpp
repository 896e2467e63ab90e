#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chlab/error.hpp"
#include "chlab/field.hpp"
#include "chlab/grid.hpp"

using namespace chlab;
using std::numbers::pi;

TEST_CASE("grid nodes and spacing") {
  const Grid g = make_grid(pi, 8);
  CHECK(g.dx() == doctest::Approx(pi / 4).epsilon(1e-15));
  const auto x = g.nodes();
  REQUIRE(x.size() == 8);
  for (std::size_t m = 0; m < 8; ++m) CHECK(x[m] == doctest::Approx(-pi + m * pi / 4).epsilon(1e-15));
  CHECK(g.spectrum_size() == 5);
  CHECK(g.wavenumber(3) == doctest::Approx(3.0));
  CHECK(g.k_max() == doctest::Approx(4.0));
}

TEST_CASE("large grid spacing") {
  const Grid g = make_grid(1200.0, std::size_t{1} << 19);
  CHECK(g.dx() == doctest::Approx(2400.0 / 524288.0).epsilon(1e-15));
  CHECK(g.dx() == doctest::Approx(4.58e-3).epsilon(1e-3));
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(make_grid(1.0, 7), InvalidArgument);
  CHECK_THROWS_AS(make_grid(1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0.0, 8), InvalidArgument);
  CHECK_THROWS_AS(make_grid(-2.0, 8), InvalidArgument);
}

TEST_CASE("extended nodes agree with double nodes") {
  const Grid g = make_grid(256.0, 21600);
  for (std::size_t m : {std::size_t{0}, std::size_t{1}, std::size_t{10799}, std::size_t{21599}}) {
    CHECK(std::abs(static_cast<double>(g.node_extended(m)) - g.node(m)) <= 1e-15 * g.half_length());
  }
}

TEST_CASE("smooth sizes") {
  CHECK(is_smooth_size(21600));
  CHECK_FALSE(is_smooth_size(14));
  CHECK(next_smooth_size(13) == 16);
  CHECK(next_smooth_size(21) == 24);
  CHECK(next_smooth_size(30) == 30);
  CHECK(next_smooth_size(31) == 32);
  for (std::size_t n = 2; n < 500; ++n) {
    const auto m = next_smooth_size(n);
    CHECK(m >= n);
    CHECK(m % 2 == 0);
    CHECK(is_smooth_size(m));
  }
}

TEST_CASE("spectrum round trip") {
  const Grid g = make_grid(10.0, 256);
  const Field f = Field::sample(g, [](double x) { return std::exp(-x * x) * std::cos(3 * x) + 0.25 * std::sin(x); });
  const Field back = Field::from_spectrum(g, ComplexBuffer(f.spectrum().begin(), f.spectrum().end()));
  double err = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) err = std::max(err, std::abs(back[m] - f[m]));
  CHECK(err < 1e-12);
}

TEST_CASE("spectrum is normalized and cached once") {
  const Grid g = make_grid(pi, 16);
  const Field f = Field::sample(g, [](double x) { return 2.0 + std::cos(2 * x); });
  CHECK_FALSE(f.spectrum_cached());
  auto c = f.spectrum();
  CHECK(f.spectrum_cached());
  CHECK(std::abs(c[0] - 2.0) < 1e-14);
  // cos(2x) on nodes starting at -pi: coefficient 1/2 (phase e^{-2i pi} = 1).
  CHECK(std::abs(c[2] - 0.5) < 1e-14);
  CHECK(f.spectrum().data() == c.data());
}

TEST_CASE("field arithmetic") {
  const Grid g = make_grid(1.0, 8);
  const Field a = Field::constant(g, 2.0);
  const Field b = Field::sample(g, [](double x) { return x; });
  const Field c = a * b - 0.5 * b + Field::zeros(g);
  for (std::size_t m = 0; m < 8; ++m) CHECK(c[m] == doctest::Approx(1.5 * g.node(m)));
  CHECK_THROWS_AS(a + Field::zeros(make_grid(1.0, 16)), InvalidArgument);
}

TEST_CASE("non-finite samples are reported") {
  const Grid g = make_grid(1.0, 8);
  RealBuffer v(8, 0.0);
  v[3] = std::nan("");
  const Field f(g, v);
  CHECK_THROWS_AS(require_finite(f, "probe"), NonFiniteError);
  CHECK_NOTHROW(require_finite(Field::zeros(g), "probe"));
}
