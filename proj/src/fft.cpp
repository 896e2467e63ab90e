#include "chlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <new>

#include "chlab/error.hpp"

namespace chlab {

namespace detail {

void* aligned_alloc_bytes(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void aligned_free(void* p) noexcept { fftw_free(p); }

}  // namespace detail

namespace {

// One pair of plans per transform length. The FFTW planner is not reentrant,
// so creation is serialized; execution through the new-array interface is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

class PlanRegistry {
 public:
  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return *it->second;
    auto pair = std::make_unique<PlanPair>();
    RealBuffer real(n);
    ComplexBuffer spec(n / 2 + 1);
    auto* r = real.data();
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    const int ni = static_cast<int>(n);
    pair->forward = fftw_plan_dft_r2c_1d(ni, r, c, FFTW_ESTIMATE);
    pair->inverse = fftw_plan_dft_c2r_1d(ni, c, r, FFTW_ESTIMATE);
    if (!pair->forward || !pair->inverse) throw Error("failed to create transform plan");
    return *plans_.emplace(n, std::move(pair)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, std::unique_ptr<PlanPair>> plans_;
};

PlanRegistry& registry() {
  static PlanRegistry r;
  return r;
}

bool aligned(const void* p) { return fftw_alignment_of(reinterpret_cast<double*>(const_cast<void*>(p))) == 0; }

}  // namespace

void fft_forward(std::span<const double> in, std::span<std::complex<double>> out) {
  const std::size_t n = in.size();
  if (out.size() != n / 2 + 1) throw InvalidArgument("spectrum size mismatch");
  const auto& plan = registry().get(n);

  // r2c does not modify its input, but the new-array API wants non-const and aligned.
  RealBuffer staged;
  double* src = const_cast<double*>(in.data());
  if (!aligned(src)) {
    staged.assign(in.begin(), in.end());
    src = staged.data();
  }
  ComplexBuffer staged_out;
  std::complex<double>* dst = out.data();
  if (!aligned(dst)) {
    staged_out.resize(out.size());
    dst = staged_out.data();
  }
  fftw_execute_dft_r2c(plan.forward, src, reinterpret_cast<fftw_complex*>(dst));
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < out.size(); ++j) dst[j] *= scale;
  if (dst != out.data()) std::copy(staged_out.begin(), staged_out.end(), out.begin());
}

void fft_inverse_destructive(std::span<std::complex<double>> coeffs, std::span<double> out) {
  const std::size_t n = out.size();
  if (coeffs.size() != n / 2 + 1) throw InvalidArgument("spectrum size mismatch");
  const auto& plan = registry().get(n);
  if (!aligned(coeffs.data()) || !aligned(out.data())) {
    ComplexBuffer c(coeffs.begin(), coeffs.end());
    RealBuffer r(n);
    fftw_execute_dft_c2r(plan.inverse, reinterpret_cast<fftw_complex*>(c.data()), r.data());
    std::copy(r.begin(), r.end(), out.begin());
    return;
  }
  fftw_execute_dft_c2r(plan.inverse, reinterpret_cast<fftw_complex*>(coeffs.data()), out.data());
}

void fft_inverse(std::span<const std::complex<double>> coeffs, std::span<double> out) {
  ComplexBuffer scratch(coeffs.begin(), coeffs.end());
  fft_inverse_destructive(scratch, out);
}

}  // namespace chlab
