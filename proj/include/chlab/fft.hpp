#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace chlab {

namespace detail {
void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage so buffers can go straight to the
/// transform backend without copies.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(detail::aligned_alloc_bytes(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) noexcept { detail::aligned_free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;
using ComplexBuffer = std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>>;

/// Normalized real-to-complex transform: out[j] = (1/N) sum_m in[m] exp(-2 pi i j m / N),
/// j = 0..N/2. `out` must hold N/2 + 1 entries.
void fft_forward(std::span<const double> in, std::span<std::complex<double>> out);

/// Inverse of fft_forward. `coeffs` is used as scratch and is overwritten.
void fft_inverse_destructive(std::span<std::complex<double>> coeffs, std::span<double> out);

/// Inverse of fft_forward leaving the coefficients intact.
void fft_inverse(std::span<const std::complex<double>> coeffs, std::span<double> out);

}  // namespace chlab
