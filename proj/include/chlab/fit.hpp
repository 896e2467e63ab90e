#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace chlab {

struct SlopeFit {
  double slope = 0.0;
  /// Standard error of the slope; zero when the fit has no residual degrees of freedom.
  double std_error = 0.0;
  std::size_t used = 0;
};

/// Least-squares slope of log(value) against log(lambda) over the `top_k`
/// largest lambdas. Needs at least two points with positive lambda and value.
SlopeFit fit_slope(std::vector<std::pair<double, double>> points, std::size_t top_k = 3);

}  // namespace chlab
