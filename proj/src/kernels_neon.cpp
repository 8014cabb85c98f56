#include <arm_neon.h>

#include "kernels_simd_body.hpp"

namespace ancientflow::kernels {
namespace {

struct Neon {
  using reg = float64x2_t;
  static constexpr std::size_t width = 2;
  static reg load(const double* p) { return vld1q_f64(p); }
  static void store(double* p, reg v) { vst1q_f64(p, v); }
  static reg set1(double x) { return vdupq_n_f64(x); }
  static reg add(reg a, reg b) { return vaddq_f64(a, b); }
  static reg sub(reg a, reg b) { return vsubq_f64(a, b); }
  static reg mul(reg a, reg b) { return vmulq_f64(a, b); }
};

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table = simd_body::make_table<Neon>("neon");
  return table;
}

}  // namespace ancientflow::kernels
