#include <atomic>
#include <cstdlib>
#include <string>

#include "wlansim/simd/kernels.hpp"

namespace wlansim::simd {

const KernelTable* avx2_kernels() { return detail::avx2_table(); }
const KernelTable* neon_kernels() { return detail::neon_table(); }

namespace {

const KernelTable* lookup(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  if (name == "neon") return neon_kernels();
  if (name == "auto" || name.empty()) {
    if (const KernelTable* t = avx2_kernels()) return t;
    if (const KernelTable* t = neon_kernels()) return t;
    return &scalar_kernels();
  }
  return nullptr;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("WLANSIM_SIMD")) {
    if (const KernelTable* t = lookup(env)) return t;
  }
  return lookup("auto");
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

bool use_kernels(std::string_view name) {
  const KernelTable* t = lookup(name);
  if (t == nullptr) return false;
  active_slot().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace wlansim::simd
