#include "kernels_impl.hpp"

namespace ancientflow::kernels {
namespace {

void laplacian_scalar(const StencilLine& l, double* out) {
  if (l.west == nullptr) {
    for (std::size_t k = 0; k < l.count; ++k)
      out[k] = scalar_ops::laplacian_psi(l.south[k], l.center[k], l.north[k],
                                         l.tan_over_2h[k], l.inv_h2);
    return;
  }
  for (std::size_t k = 0; k < l.count; ++k)
    out[k] = scalar_ops::laplacian_full(l.south[k], l.center[k], l.north[k], l.west[k],
                                        l.east[k], l.tan_over_2h[k], l.theta_lap[k], l.inv_h2);
}

void grad_sq_scalar(const StencilLine& l, double* out) {
  if (l.west == nullptr) {
    for (std::size_t k = 0; k < l.count; ++k)
      out[k] = scalar_ops::grad_sq_psi(l.south[k], l.north[k], l.inv_2h);
    return;
  }
  for (std::size_t k = 0; k < l.count; ++k)
    out[k] = scalar_ops::grad_sq_full(l.south[k], l.north[k], l.west[k], l.east[k],
                                      l.theta_grad[k], l.inv_2h);
}

void flow_rhs_scalar(const StencilLine& l, double* out) {
  if (l.west == nullptr) {
    for (std::size_t k = 0; k < l.count; ++k) {
      const double c = l.center[k];
      const double lap =
          scalar_ops::laplacian_psi(l.south[k], c, l.north[k], l.tan_over_2h[k], l.inv_h2);
      const double g = scalar_ops::grad_sq_psi(l.south[k], l.north[k], l.inv_2h);
      out[k] = scalar_ops::flow_rhs(c, lap, g);
    }
    return;
  }
  for (std::size_t k = 0; k < l.count; ++k) {
    const double c = l.center[k];
    const double lap = scalar_ops::laplacian_full(l.south[k], c, l.north[k], l.west[k], l.east[k],
                                                  l.tan_over_2h[k], l.theta_lap[k], l.inv_h2);
    const double g = scalar_ops::grad_sq_full(l.south[k], l.north[k], l.west[k], l.east[k],
                                              l.theta_grad[k], l.inv_2h);
    out[k] = scalar_ops::flow_rhs(c, lap, g);
  }
}

void axpy_scalar(std::size_t n, const double* y, double a, const double* k, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + a * k[i];
}

void rk4_combine_scalar(std::size_t n, const double* y, double dt6, const double* k1,
                        const double* k2, const double* k3, const double* k4, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scalar_ops::rk4(y[i], dt6, k1[i], k2[i], k3[i], k4[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",        laplacian_scalar, grad_sq_scalar, flow_rhs_scalar,
                                 axpy_scalar, rk4_combine_scalar};
  return table;
}

}  // namespace ancientflow::kernels
