#include <atomic>
#include <cstdlib>
#include <string>

#include "ancientflow/errors.hpp"
#include "kernels_impl.hpp"

namespace ancientflow::kernels {
namespace {

const KernelTable* best_available() {
  if (const char* env = std::getenv("ANCIENTFLOW_SIMD"); env != nullptr && *env != '\0') {
    if (const KernelTable* t = find(env)) return t;
    throw DomainError(std::string("ANCIENTFLOW_SIMD=") + env + " is not available on this build/CPU");
  }
  if (const KernelTable* t = avx2_kernels()) return t;
  if (const KernelTable* t = neon_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& selection() {
  static std::atomic<const KernelTable*> current{best_available()};
  return current;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(ANCIENTFLOW_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(ANCIENTFLOW_HAVE_NEON)
  return &neon_table();
#else
  return nullptr;
#endif
}

const KernelTable* find(std::string_view name) {
  if (name == "scalar") return &scalar_kernels();
  if (name == "avx2") return avx2_kernels();
  if (name == "neon") return neon_kernels();
  return nullptr;
}

const KernelTable& active() { return *selection().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { selection().store(&table, std::memory_order_release); }

}  // namespace ancientflow::kernels
