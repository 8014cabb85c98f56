#pragma once

#include "ancientflow/kernels.hpp"

// Per-node arithmetic shared by the scalar kernels and the SIMD tails. The
// vector kernels repeat these exact operation sequences lane-wise.
namespace ancientflow::kernels {

namespace scalar_ops {

inline double laplacian_psi(double s, double c, double n, double tan_over_2h, double inv_h2) {
  const double cc = c + c;
  double lap = ((n + s) - cc) * inv_h2;
  lap = lap - tan_over_2h * (n - s);
  return lap;
}

inline double laplacian_full(double s, double c, double n, double w, double e,
                             double tan_over_2h, double theta_lap, double inv_h2) {
  const double cc = c + c;
  double lap = ((n + s) - cc) * inv_h2;
  lap = lap - tan_over_2h * (n - s);
  lap = lap + theta_lap * ((e + w) - cc);
  return lap;
}

inline double grad_sq_psi(double s, double n, double inv_2h) {
  const double d = (n - s) * inv_2h;
  return d * d;
}

inline double grad_sq_full(double s, double n, double w, double e, double theta_grad,
                           double inv_2h) {
  const double d = (n - s) * inv_2h;
  const double dt = e - w;
  return d * d + theta_grad * (dt * dt);
}

inline double flow_rhs(double c, double lap, double grad_sq) {
  const double q = c * c;
  return (c * lap - grad_sq) + (q + q);
}

inline double rk4(double y, double dt6, double k1, double k2, double k3, double k4) {
  const double mid = k2 + k3;
  return y + dt6 * ((k1 + k4) + (mid + mid));
}

}  // namespace scalar_ops

#if defined(ANCIENTFLOW_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(ANCIENTFLOW_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace ancientflow::kernels
