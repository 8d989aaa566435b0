#include "wlansim/simd/kernels.hpp"

namespace wlansim::simd {

namespace {

void accumulate_scalar(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = a * x[i];
    y[i] += prod;
  }
}

void threshold_mask_scalar(const double* values, const double* thresholds, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = values[i] >= thresholds[i] ? 1 : 0;
}

double sum_scalar(const double* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += x[i];
  return total;
}

constexpr KernelTable kScalar{"scalar", accumulate_scalar, axpy_scalar, threshold_mask_scalar, sum_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace wlansim::simd
