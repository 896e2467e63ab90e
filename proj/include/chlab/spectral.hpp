#pragma once

#include <complex>
#include <cstddef>

#include "chlab/field.hpp"

namespace chlab {

/// Multiply the spectrum of `f` by symbol(k_j) and transform back.
///
/// The Nyquist bin is dropped for odd symbols (derivatives, Lambda^{-1}),
/// which have no real representation there.
template <class Symbol>
Field apply_symbol(const Field& f, Symbol&& symbol, bool odd) {
  const Grid& g = f.grid();
  auto c = f.spectrum();
  ComplexBuffer out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = symbol(g.wavenumber(j)) * c[j];
  if (odd) out.back() = 0.0;
  return Field::from_spectrum(g, std::move(out));
}

/// Bessel potential (1 - d_xx)^{s/2}, symbol (1 + k^2)^{s/2}.
Field ds_apply(const Field& f, double s_exp);

/// d_x (1 - d_xx)^{-1}, symbol i k / (1 + k^2).
Field lambda_inv_apply(const Field& f);

/// Spectral derivative of the given order (order >= 1).
Field derivative(const Field& f, int order = 1);

/// Zero every mode with |k| > fraction * k_max.
Field dealias(const Field& f, double fraction);

/// sqrt(2L * sum_j (1 + k_j^2)^s |c_j|^2) over the full two-sided spectrum.
double sobolev_norm(const Field& f, double s_exp);

/// Trapezoid-rule L2 norm of the samples, sqrt(dx * sum f_m^2).
double l2_norm_quadrature(const Field& f);

double sup_norm(const Field& f);

/// max|f| + max|d_x f| over nodes.
double c1_norm(const Field& f);

/// Fraction of sum |c_j|^2 carried by modes with |k| > fraction * k_max.
double band_energy_fraction(const Field& f, double fraction);

}  // namespace chlab
