#pragma once

#include <string>

#include "chlab/grid.hpp"

namespace chlab {

/// One member (omega, lambda) of the approximate-solution family at
/// regularity s with envelope dilation exponent delta.
struct ApproxParams {
  double omega = 1.0;
  double lambda = 16.0;
  double delta = 1.5;
  double s = 2.0;

  /// Envelope dilation lambda^delta.
  double dilation() const;
  /// Amplitude lambda^{-delta/2 - s} of the high-frequency packet.
  double packet_amplitude() const;
};

/// Residual decay exponent r_s = s - delta/2.
double residual_exponent(double s, double delta);
/// Supremum-bound exponent rho_s = min{1 - delta/2, delta/2 + s - 2}.
double sup_exponent(double s, double delta);
/// H^s difference exponent eps_s = (1 - delta/2) / (s + 2).
double hs_difference_exponent(double s, double delta);

/// Empty string if (s, delta) is admissible, otherwise a message naming the
/// violated constraint.
std::string check_regularity(double s, double delta);

/// Throws InvalidArgument unless s > 3/2, 1 < delta < 2, rho_s > 0 and lambda >= 1.
void validate(const ApproxParams& p);

/// Grid for one ladder rung: L = 4 lambda^delta and k_max >= 8 lambda,
/// N rounded up to an even 5-smooth size, then multiplied by `resolution`.
Grid grid_for(double lambda, double delta, int resolution = 1);

}  // namespace chlab
