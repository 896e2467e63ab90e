#include "chlab/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chlab/error.hpp"

namespace chlab {

double ApproxParams::dilation() const { return std::pow(lambda, delta); }

double ApproxParams::packet_amplitude() const { return std::pow(lambda, -0.5 * delta - s); }

double residual_exponent(double s, double delta) { return s - 0.5 * delta; }

double sup_exponent(double s, double delta) { return std::min(1.0 - 0.5 * delta, 0.5 * delta + s - 2.0); }

double hs_difference_exponent(double s, double delta) { return (1.0 - 0.5 * delta) / (s + 2.0); }

std::string check_regularity(double s, double delta) {
  std::ostringstream msg;
  if (!std::isfinite(s) || !(s > 1.5)) {
    msg << "s = " << s << " violates s > 3/2 (well-posedness and non-uniform dependence hold only for s > 3/2)";
    return msg.str();
  }
  if (!std::isfinite(delta) || !(delta > 0.0 && delta < 2.0)) {
    msg << "delta = " << delta << " violates 0 < delta < 2 (low-frequency lifespan bound) and 1 < delta < 2 "
        << "(residual estimate)";
    return msg.str();
  }
  if (!(delta > 1.0)) {
    msg << "delta = " << delta << " violates 1 < delta < 2 (residual estimate needs 1 < delta)";
    return msg.str();
  }
  if (!(sup_exponent(s, delta) > 0.0)) {
    msg << "rho_s = min{1 - delta/2, delta/2 + s - 2} = " << sup_exponent(s, delta)
        << " must be positive for (s, delta) = (" << s << ", " << delta << ")";
    return msg.str();
  }
  return {};
}

void validate(const ApproxParams& p) {
  if (auto err = check_regularity(p.s, p.delta); !err.empty()) throw InvalidArgument(err);
  if (!std::isfinite(p.lambda) || !(p.lambda >= 1.0)) throw InvalidArgument("lambda must be >= 1");
  if (!std::isfinite(p.omega)) throw InvalidArgument("omega must be finite");
}

Grid grid_for(double lambda, double delta, int resolution) {
  if (!(lambda >= 1.0)) throw InvalidArgument("lambda must be >= 1");
  if (resolution < 1) throw InvalidArgument("resolution multiplier must be >= 1");
  const double half_length = 4.0 * std::pow(lambda, delta);
  const double k_needed = 8.0 * lambda;
  const auto n_min = static_cast<std::size_t>(std::ceil(2.0 * half_length * k_needed / std::numbers::pi));
  return Grid(half_length, next_smooth_size(n_min) * static_cast<std::size_t>(resolution));
}

}  // namespace chlab
