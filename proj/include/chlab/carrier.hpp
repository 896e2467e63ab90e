#pragma once

#include <cmath>
#include <cstddef>

#include "chlab/grid.hpp"

namespace chlab {

/// cos(lambda x_m - shift) with the phase formed in extended precision.
inline double carrier_cos(const Grid& g, std::size_t m, double lambda, double shift) {
  return static_cast<double>(std::cos(static_cast<long double>(lambda) * g.node_extended(m) - shift));
}

/// sin(lambda x_m - shift) with the phase formed in extended precision.
inline double carrier_sin(const Grid& g, std::size_t m, double lambda, double shift) {
  return static_cast<double>(std::sin(static_cast<long double>(lambda) * g.node_extended(m) - shift));
}

}  // namespace chlab
