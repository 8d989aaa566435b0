#include "wlansim/simd/kernels.hpp"

#if defined(WLANSIM_ENABLE_SIMD) && defined(__aarch64__)
#define WLANSIM_HAVE_NEON 1
#include <arm_neon.h>
#else
#define WLANSIM_HAVE_NEON 0
#endif

namespace wlansim::simd::detail {

#if WLANSIM_HAVE_NEON

namespace {

void accumulate_neon(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vld1q_f64(src + i)));
  for (; i < n; ++i) dst[i] += src[i];
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // vmulq + vaddq rather than vfmaq: must round like the scalar reference.
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = a * x[i];
    y[i] += prod;
  }
}

void threshold_mask_neon(const double* values, const double* thresholds, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t ge = vcgeq_f64(vld1q_f64(values + i), vld1q_f64(thresholds + i));
    out[i] = vgetq_lane_u64(ge, 0) ? 1 : 0;
    out[i + 1] = vgetq_lane_u64(ge, 1) ? 1 : 0;
  }
  for (; i < n; ++i) out[i] = values[i] >= thresholds[i] ? 1 : 0;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) total += x[i];
  return total;
}

constexpr KernelTable kNeon{"neon", accumulate_neon, axpy_neon, threshold_mask_neon, sum_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

#else

const KernelTable* neon_table() { return nullptr; }

#endif

}  // namespace wlansim::simd::detail
