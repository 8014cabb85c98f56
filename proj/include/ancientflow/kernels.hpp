#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the solver. Every kernel has a scalar reference
// version and optional SIMD versions (AVX2 on x86-64, NEON on AArch64) that
// perform the same IEEE operations in the same order, so all variants agree
// bitwise. The active table is picked at first use from the CPU features and
// can be overridden with ANCIENTFLOW_SIMD=scalar|avx2|neon.
namespace ancientflow::kernels {

/// A run of `count` contiguous nodes with their five-point neighbours.
/// `west`, `east`, `theta_lap` and `theta_grad` are null in axisymmetric mode.
struct StencilLine {
  std::size_t count = 0;
  const double* south = nullptr;
  const double* center = nullptr;
  const double* north = nullptr;
  const double* west = nullptr;
  const double* east = nullptr;
  const double* tan_over_2h = nullptr;
  const double* theta_lap = nullptr;
  const double* theta_grad = nullptr;
  double inv_h2 = 0.0;
  double inv_2h = 0.0;
};

struct KernelTable {
  std::string_view name;
  /// out = (n + s - 2c)/h² - tanψ (n - s)/(2h) [+ sec²ψ (e + w - 2c)/h_θ²]
  void (*laplacian)(const StencilLine& line, double* out);
  /// out = ((n - s)/(2h))² [+ sec²ψ ((e - w)/(2h_θ))²]
  void (*grad_sq)(const StencilLine& line, double* out);
  /// out = c Δc - |∇c|² + 2c²
  void (*flow_rhs)(const StencilLine& line, double* out);
  /// out = y + a k
  void (*axpy)(std::size_t n, const double* y, double a, const double* k, double* out);
  /// out = y + dt6 ((k1 + k4) + 2 (k2 + k3))
  void (*rk4_combine)(std::size_t n, const double* y, double dt6, const double* k1,
                      const double* k2, const double* k3, const double* k4, double* out);
};

const KernelTable& scalar_kernels();
/// Null when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
/// Null when not compiled in.
const KernelTable* neon_kernels();

/// Currently selected table.
const KernelTable& active();
/// Replaces the selection; not thread-safe with respect to running kernels.
void set_active(const KernelTable& table);
/// Looks up a table by name ("scalar", "avx2", "neon"); null if unavailable.
const KernelTable* find(std::string_view name);

/// RAII override of the active table.
class ScopedKernels {
public:
  explicit ScopedKernels(const KernelTable& table) : previous_(&active()) { set_active(table); }
  ~ScopedKernels() { set_active(*previous_); }
  ScopedKernels(const ScopedKernels&) = delete;
  ScopedKernels& operator=(const ScopedKernels&) = delete;

private:
  const KernelTable* previous_;
};

}  // namespace ancientflow::kernels
