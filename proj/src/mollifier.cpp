#include "chlab/mollifier.hpp"

#include <cmath>
#include <string>

#include "chlab/error.hpp"

namespace chlab {

namespace {

double raw_kernel(double x) {
  const double r2 = x * x;
  return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

// Z = integral of raw_kernel over (-1, 1), by composite Simpson on a fine mesh.
double kernel_mass() {
  static const double z = [] {
    constexpr int n = 20000;
    const double h = 2.0 / n;
    double sum = raw_kernel(-1.0) + raw_kernel(1.0);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * raw_kernel(-1.0 + i * h);
    return sum * h / 3.0;
  }();
  return z;
}

}  // namespace

double mollifier_kernel(double x) { return raw_kernel(x) / kernel_mass(); }

Field mollify(const Field& f, double eps) {
  const Grid& g = f.grid();
  if (!(eps >= 2.0 * g.dx())) {
    throw InvalidArgument("mollifier width " + std::to_string(eps) + " is below the grid resolution 2*dx = " +
                          std::to_string(2.0 * g.dx()));
  }
  if (!(eps < g.half_length())) throw InvalidArgument("mollifier width exceeds the domain");

  // Kernel laid out with its centre at index 0 and wrapped periodically.
  const std::size_t n = g.size();
  RealBuffer kernel(n, 0.0);
  double mass = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double offset = (m <= n / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n)) * g.dx();
    kernel[m] = raw_kernel(offset / eps);
    mass += kernel[m];
  }
  mass *= g.dx();

  ComplexBuffer kernel_hat(g.spectrum_size());
  fft_forward(kernel, kernel_hat);
  // fft_forward carries 1/N; convolution weight is dx / mass per sample.
  const double scale = static_cast<double>(n) * g.dx() / mass;
  auto c = f.spectrum();
  ComplexBuffer out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] * kernel_hat[j] * scale;
  return Field::from_spectrum(g, std::move(out));
}

}  // namespace chlab
