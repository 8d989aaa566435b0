#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace wlansim::simd {

// Data-parallel inner loops of the simulator. Every variant must agree with
// the scalar reference bit-for-bit on the element-wise kernels; `sum` may
// differ by reassociation only.
struct KernelTable {
  const char* name;
  // dst[i] += src[i]
  void (*accumulate)(double* dst, const double* src, std::size_t n);
  // y[i] += a * x[i]  (separate multiply and add, never fused)
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = values[i] >= thresholds[i]
  void (*threshold_mask)(const double* values, const double* thresholds, std::uint8_t* out, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when not compiled in or the CPU lacks the instruction set.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// The table used by the free functions below. Chosen on first use: the
/// WLANSIM_SIMD environment variable (scalar|avx2|neon|auto) if set,
/// otherwise the widest supported variant.
const KernelTable& active_kernels();

/// Overrides the active table. Returns false if `name` is unknown or unsupported.
bool use_kernels(std::string_view name);

inline void accumulate(std::span<double> dst, std::span<const double> src) {
  active_kernels().accumulate(dst.data(), src.data(), dst.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(a, x.data(), y.data(), y.size());
}
inline void threshold_mask(std::span<const double> values, std::span<const double> thresholds,
                           std::span<std::uint8_t> out) {
  active_kernels().threshold_mask(values.data(), thresholds.data(), out.data(), out.size());
}
inline double sum(std::span<const double> x) { return active_kernels().sum(x.data(), x.size()); }

namespace detail {
// Defined in the per-ISA translation units.
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace wlansim::simd
