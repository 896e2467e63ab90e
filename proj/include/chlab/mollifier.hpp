#pragma once

#include "chlab/field.hpp"

namespace chlab {

/// Unit-mass kernel j(x) = exp(-1/(1-x^2)) / Z on (-1, 1), zero elsewhere.
double mollifier_kernel(double x);

/// Friedrichs mollifier J_eps f = j_eps * f by circular convolution.
///
/// The sampled kernel j_eps(x) = j(x/eps)/eps is renormalized so that its
/// discrete mass dx * sum j_eps(x_m) is exactly one. Requires 2 dx <= eps < L.
Field mollify(const Field& f, double eps);

}  // namespace chlab
