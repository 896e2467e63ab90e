#pragma once

#include <complex>
#include <cstddef>
#include <atomic>
#include <memory>
#include <mutex>
#include <span>

#include "chlab/fft.hpp"
#include "chlab/grid.hpp"

namespace chlab {

/// Immutable real samples on a Grid with a lazily computed, cached spectrum.
///
/// Copies share storage. The spectrum holds the normalized r2c coefficients
/// c_j, j = 0..N/2, and is built at most once even under concurrent access.
class Field {
 public:
  Field(const Grid& grid, RealBuffer values);

  static Field zeros(const Grid& grid);
  static Field constant(const Grid& grid, double c);
  static Field from_spectrum(const Grid& grid, ComplexBuffer coeffs);

  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    RealBuffer v(grid.size());
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = f(grid.node(m));
    return Field(grid, std::move(v));
  }

  const Grid& grid() const { return impl_->grid; }
  std::size_t size() const { return impl_->values.size(); }
  std::span<const double> values() const { return impl_->values; }
  double operator[](std::size_t m) const { return impl_->values[m]; }

  std::span<const std::complex<double>> spectrum() const;
  bool spectrum_cached() const;

  RealBuffer copy_values() const { return impl_->values; }

 private:
  struct Impl {
    Grid grid;
    RealBuffer values;
    mutable std::once_flag once;
    mutable ComplexBuffer spectrum;
    mutable std::atomic<bool> ready{false};
    Impl(const Grid& g, RealBuffer v) : grid(g), values(std::move(v)) {}
  };
  std::shared_ptr<const Impl> impl_;
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& a);
/// Pointwise product.
Field operator*(const Field& a, const Field& b);

/// Throws NonFiniteError naming `what` if any sample is NaN or infinite.
void require_finite(const Field& f, const char* what);

}  // namespace chlab
