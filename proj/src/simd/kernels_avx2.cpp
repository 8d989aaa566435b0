#include "wlansim/simd/kernels.hpp"

#if defined(WLANSIM_ENABLE_SIMD) && (defined(__x86_64__) || defined(_M_X64))
#define WLANSIM_HAVE_AVX2 1
#include <immintrin.h>
#else
#define WLANSIM_HAVE_AVX2 0
#endif

namespace wlansim::simd::detail {

#if WLANSIM_HAVE_AVX2

namespace {

#define WLANSIM_AVX2 __attribute__((target("avx2")))

WLANSIM_AVX2 void accumulate_avx2(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst + i);
    const __m256d s = _mm256_loadu_pd(src + i);
    _mm256_storeu_pd(dst + i, _mm256_add_pd(d, s));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

WLANSIM_AVX2 void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = a * x[i];
    y[i] += prod;
  }
}

WLANSIM_AVX2 void threshold_mask_avx2(const double* values, const double* thresholds, std::uint8_t* out,
                                      std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(values + i), _mm256_loadu_pd(thresholds + i), _CMP_GE_OQ);
    const int bits = _mm256_movemask_pd(ge);
    out[i] = bits & 1;
    out[i + 1] = (bits >> 1) & 1;
    out[i + 2] = (bits >> 2) & 1;
    out[i + 3] = (bits >> 3) & 1;
  }
  for (; i < n; ++i) out[i] = values[i] >= thresholds[i] ? 1 : 0;
}

WLANSIM_AVX2 double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += x[i];
  return total;
}

#undef WLANSIM_AVX2

constexpr KernelTable kAvx2{"avx2", accumulate_avx2, axpy_avx2, threshold_mask_avx2, sum_avx2};

}  // namespace

const KernelTable* avx2_table() { return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr; }

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace wlansim::simd::detail
