#include "chlab/fit.hpp"

#include <algorithm>
#include <cmath>

#include "chlab/csv.hpp"
#include "chlab/error.hpp"

namespace chlab {

SlopeFit fit_slope(std::vector<std::pair<double, double>> points, std::size_t top_k) {
  if (top_k < 2) throw InvalidArgument("slope fit needs top_k >= 2");
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw InvalidArgument("slope fit needs positive finite data, got (" + format_double(x) + ", " +
                            format_double(y) + ")");
    }
  }
  std::sort(points.begin(), points.end());
  if (points.size() > top_k) points.erase(points.begin(), points.end() - static_cast<std::ptrdiff_t>(top_k));
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("slope fit needs at least two points");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("slope fit needs distinct lambdas");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.used = n;
  if (n > 2) {
    double ssr = 0.0;
    for (const auto& [x, y] : points) {
      const double r = std::log(y) - (my + fit.slope * (std::log(x) - mx));
      ssr += r * r;
    }
    fit.std_error = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

}  // namespace chlab
