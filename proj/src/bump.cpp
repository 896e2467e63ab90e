#include "chlab/bump.hpp"

#include <cmath>
#include <string>

#include "chlab/error.hpp"

namespace chlab {

namespace {

double smooth_step(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

void validate(const BumpSpec& spec) {
  if (!(spec.inner_radius > 0.0) || !(spec.outer_radius > spec.inner_radius)) {
    throw InvalidArgument("bump radii must satisfy 0 < inner < outer");
  }
}

double bump_value(const BumpSpec& spec, double x) {
  const double r = std::abs(x);
  if (r <= spec.inner_radius) return 1.0;
  if (r >= spec.outer_radius) return 0.0;
  const double rise = smooth_step(spec.outer_radius - r);
  const double fall = smooth_step(r - spec.inner_radius);
  return rise / (rise + fall);
}

Field make_bump(const BumpSpec& spec, const Grid& grid) { return scale_bump(spec, 1.0, grid); }

Field scale_bump(const BumpSpec& spec, double dilation, const Grid& grid) {
  validate(spec);
  if (!(dilation > 0.0)) throw InvalidArgument("bump dilation must be positive");
  if (dilation * spec.outer_radius >= grid.half_length()) {
    throw InvalidArgument("dilated bump support " + std::to_string(dilation * spec.outer_radius) +
                          " does not fit in the half-length " + std::to_string(grid.half_length()));
  }
  const double inv = 1.0 / dilation;
  return Field::sample(grid, [&](double x) { return bump_value(spec, x * inv); });
}

}  // namespace chlab
