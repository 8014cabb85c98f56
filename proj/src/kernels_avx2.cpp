// Compiled with -mavx2 (no FMA: products and sums must round separately).
#include <immintrin.h>

#include "kernels_simd_body.hpp"

namespace ancientflow::kernels {
namespace {

struct Avx2 {
  using reg = __m256d;
  static constexpr std::size_t width = 4;
  static reg load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, reg v) { _mm256_storeu_pd(p, v); }
  static reg set1(double x) { return _mm256_set1_pd(x); }
  static reg add(reg a, reg b) { return _mm256_add_pd(a, b); }
  static reg sub(reg a, reg b) { return _mm256_sub_pd(a, b); }
  static reg mul(reg a, reg b) { return _mm256_mul_pd(a, b); }
};

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table = simd_body::make_table<Avx2>("avx2");
  return table;
}

}  // namespace ancientflow::kernels
