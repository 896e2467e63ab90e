#include "chlab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "chlab/error.hpp"

namespace chlab {

namespace {

// Multiplicity of r2c bin j in the two-sided spectrum.
double bin_weight(std::size_t j, std::size_t n_bins) { return (j == 0 || j + 1 == n_bins) ? 1.0 : 2.0; }

}  // namespace

Field ds_apply(const Field& f, double s_exp) {
  require_finite(f, "ds_apply input");
  const double half = 0.5 * s_exp;
  return apply_symbol(f, [half](double k) { return std::complex<double>(std::pow(1.0 + k * k, half), 0.0); }, false);
}

Field lambda_inv_apply(const Field& f) {
  require_finite(f, "lambda_inv_apply input");
  return apply_symbol(f, [](double k) { return std::complex<double>(0.0, k / (1.0 + k * k)); }, true);
}

Field derivative(const Field& f, int order) {
  if (order < 1) throw InvalidArgument("derivative order must be >= 1");
  const bool odd = order % 2 == 1;
  return apply_symbol(f, [order](double k) { return std::pow(std::complex<double>(0.0, k), order); }, odd);
}

Field dealias(const Field& f, double fraction) {
  const double cut = fraction * f.grid().k_max();
  return apply_symbol(f, [cut](double k) { return std::complex<double>(k <= cut ? 1.0 : 0.0, 0.0); }, false);
}

double sobolev_norm(const Field& f, double s_exp) {
  require_finite(f, "sobolev_norm input");
  const Grid& g = f.grid();
  auto c = f.spectrum();
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = g.wavenumber(j);
    sum += bin_weight(j, c.size()) * std::pow(1.0 + k * k, s_exp) * std::norm(c[j]);
  }
  return std::sqrt(2.0 * g.half_length() * sum);
}

double l2_norm_quadrature(const Field& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v * v;
  return std::sqrt(f.grid().dx() * sum);
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double c1_norm(const Field& f) {
  require_finite(f, "c1_norm input");
  return sup_norm(f) + sup_norm(derivative(f));
}

double band_energy_fraction(const Field& f, double fraction) {
  const Grid& g = f.grid();
  auto c = f.spectrum();
  const double cut = fraction * g.k_max();
  double total = 0.0;
  double band = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double e = bin_weight(j, c.size()) * std::norm(c[j]);
    total += e;
    if (g.wavenumber(j) > cut) band += e;
  }
  return total > 0.0 ? band / total : 0.0;
}

}  // namespace chlab
