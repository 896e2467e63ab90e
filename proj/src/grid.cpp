#include "chlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chlab/error.hpp"

namespace chlab {

Grid::Grid(double half_length, std::size_t n_points)
    : half_length_(half_length), n_(n_points), dx_(2.0 * half_length / static_cast<double>(n_points)) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw InvalidArgument("grid half-length must be positive and finite, got " + std::to_string(half_length));
  }
  if (n_points < 2 || n_points % 2 != 0) {
    throw InvalidArgument("grid size must be a positive even integer, got " + std::to_string(n_points));
  }
}

double Grid::node(std::size_t m) const { return -half_length_ + static_cast<double>(m) * dx_; }

long double Grid::node_extended(std::size_t m) const {
  const long double l = half_length_;
  return -l + static_cast<long double>(m) * (2.0L * l / static_cast<long double>(n_));
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t m = 0; m < n_; ++m) x[m] = node(m);
  return x;
}

double Grid::wavenumber(std::size_t j) const {
  return static_cast<double>(j) * std::numbers::pi / half_length_;
}

double Grid::k_max() const { return wavenumber(n_ / 2); }

Grid make_grid(double half_length, std::size_t n_points) { return Grid(half_length, n_points); }

bool is_smooth_size(std::size_t n) {
  if (n == 0) return false;
  for (std::size_t p : {2u, 3u, 5u}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

std::size_t next_smooth_size(std::size_t n) {
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  while (!is_smooth_size(n)) n += 2;
  return n;
}

}  // namespace chlab
