#include "chlab/field.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "chlab/error.hpp"

namespace chlab {

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
}

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a, b);
  RealBuffer out(a.size());
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = op(va[m], vb[m]);
  return Field(a.grid(), std::move(out));
}

}  // namespace

Field::Field(const Grid& grid, RealBuffer values) {
  if (values.size() != grid.size()) {
    throw InvalidArgument("field has " + std::to_string(values.size()) + " samples, grid has " +
                          std::to_string(grid.size()));
  }
  impl_ = std::make_shared<Impl>(grid, std::move(values));
}

Field Field::zeros(const Grid& grid) { return Field(grid, RealBuffer(grid.size(), 0.0)); }

Field Field::constant(const Grid& grid, double c) { return Field(grid, RealBuffer(grid.size(), c)); }

Field Field::from_spectrum(const Grid& grid, ComplexBuffer coeffs) {
  if (coeffs.size() != grid.spectrum_size()) throw InvalidArgument("spectrum size mismatch");
  RealBuffer v(grid.size());
  fft_inverse_destructive(coeffs, v);
  return Field(grid, std::move(v));
}

std::span<const std::complex<double>> Field::spectrum() const {
  std::call_once(impl_->once, [this] {
    impl_->spectrum.resize(impl_->grid.spectrum_size());
    fft_forward(impl_->values, impl_->spectrum);
    impl_->ready.store(true, std::memory_order_release);
  });
  return impl_->spectrum;
}

bool Field::spectrum_cached() const { return impl_->ready.load(std::memory_order_acquire); }

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Field operator*(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

Field operator*(double c, const Field& a) {
  RealBuffer out(a.size());
  auto v = a.values();
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = c * v[m];
  return Field(a.grid(), std::move(out));
}

void require_finite(const Field& f, const char* what) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite value in ") + what);
  }
}

}  // namespace chlab
