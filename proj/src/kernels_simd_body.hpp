#pragma once

#include "kernels_impl.hpp"

// Vector kernel bodies, instantiated once per ISA. `V` provides width, load,
// store, set1, add, sub and mul; lanes repeat scalar_ops exactly and the tail
// falls back to scalar_ops, so every variant matches the scalar reference bit
// for bit.
namespace ancientflow::kernels::simd_body {

template <class V>
inline typename V::reg laplacian_psi(typename V::reg s, typename V::reg c, typename V::reg n,
                                     typename V::reg tan_over_2h, typename V::reg inv_h2) {
  const auto cc = V::add(c, c);
  auto lap = V::mul(V::sub(V::add(n, s), cc), inv_h2);
  lap = V::sub(lap, V::mul(tan_over_2h, V::sub(n, s)));
  return lap;
}

template <class V>
inline typename V::reg theta_term(typename V::reg c, typename V::reg w, typename V::reg e,
                                  typename V::reg theta_lap) {
  return V::mul(theta_lap, V::sub(V::add(e, w), V::add(c, c)));
}

template <class V>
inline typename V::reg grad_psi(typename V::reg s, typename V::reg n, typename V::reg inv_2h) {
  const auto d = V::mul(V::sub(n, s), inv_2h);
  return V::mul(d, d);
}

template <class V>
inline typename V::reg grad_full(typename V::reg s, typename V::reg n, typename V::reg w,
                                 typename V::reg e, typename V::reg theta_grad,
                                 typename V::reg inv_2h) {
  const auto d = V::mul(V::sub(n, s), inv_2h);
  const auto dt = V::sub(e, w);
  return V::add(V::mul(d, d), V::mul(theta_grad, V::mul(dt, dt)));
}

template <class V>
inline typename V::reg rhs(typename V::reg c, typename V::reg lap, typename V::reg g) {
  const auto q = V::mul(c, c);
  return V::add(V::sub(V::mul(c, lap), g), V::add(q, q));
}

template <class V>
void laplacian(const StencilLine& l, double* out) {
  const auto inv_h2 = V::set1(l.inv_h2);
  std::size_t k = 0;
  if (l.west == nullptr) {
    for (; k + V::width <= l.count; k += V::width) {
      V::store(out + k, laplacian_psi<V>(V::load(l.south + k), V::load(l.center + k),
                                         V::load(l.north + k), V::load(l.tan_over_2h + k),
                                         inv_h2));
    }
    for (; k < l.count; ++k)
      out[k] = scalar_ops::laplacian_psi(l.south[k], l.center[k], l.north[k],
                                         l.tan_over_2h[k], l.inv_h2);
    return;
  }
  for (; k + V::width <= l.count; k += V::width) {
    const auto c = V::load(l.center + k);
    auto lap = laplacian_psi<V>(V::load(l.south + k), c, V::load(l.north + k),
                                V::load(l.tan_over_2h + k), inv_h2);
    lap = V::add(lap, theta_term<V>(c, V::load(l.west + k), V::load(l.east + k),
                                    V::load(l.theta_lap + k)));
    V::store(out + k, lap);
  }
  for (; k < l.count; ++k)
    out[k] = scalar_ops::laplacian_full(l.south[k], l.center[k], l.north[k], l.west[k], l.east[k],
                                        l.tan_over_2h[k], l.theta_lap[k], l.inv_h2);
}

template <class V>
void grad_sq(const StencilLine& l, double* out) {
  const auto inv_2h = V::set1(l.inv_2h);
  std::size_t k = 0;
  if (l.west == nullptr) {
    for (; k + V::width <= l.count; k += V::width)
      V::store(out + k, grad_psi<V>(V::load(l.south + k), V::load(l.north + k), inv_2h));
    for (; k < l.count; ++k) out[k] = scalar_ops::grad_sq_psi(l.south[k], l.north[k], l.inv_2h);
    return;
  }
  for (; k + V::width <= l.count; k += V::width) {
    V::store(out + k, grad_full<V>(V::load(l.south + k), V::load(l.north + k), V::load(l.west + k),
                                   V::load(l.east + k), V::load(l.theta_grad + k), inv_2h));
  }
  for (; k < l.count; ++k)
    out[k] = scalar_ops::grad_sq_full(l.south[k], l.north[k], l.west[k], l.east[k],
                                      l.theta_grad[k], l.inv_2h);
}

template <class V>
void flow_rhs(const StencilLine& l, double* out) {
  const auto inv_h2 = V::set1(l.inv_h2);
  const auto inv_2h = V::set1(l.inv_2h);
  std::size_t k = 0;
  if (l.west == nullptr) {
    for (; k + V::width <= l.count; k += V::width) {
      const auto s = V::load(l.south + k);
      const auto c = V::load(l.center + k);
      const auto n = V::load(l.north + k);
      const auto lap = laplacian_psi<V>(s, c, n, V::load(l.tan_over_2h + k), inv_h2);
      V::store(out + k, rhs<V>(c, lap, grad_psi<V>(s, n, inv_2h)));
    }
    for (; k < l.count; ++k) {
      const double c = l.center[k];
      const double lap =
          scalar_ops::laplacian_psi(l.south[k], c, l.north[k], l.tan_over_2h[k], l.inv_h2);
      out[k] = scalar_ops::flow_rhs(c, lap, scalar_ops::grad_sq_psi(l.south[k], l.north[k], l.inv_2h));
    }
    return;
  }
  for (; k + V::width <= l.count; k += V::width) {
    const auto s = V::load(l.south + k);
    const auto c = V::load(l.center + k);
    const auto n = V::load(l.north + k);
    const auto w = V::load(l.west + k);
    const auto e = V::load(l.east + k);
    auto lap = laplacian_psi<V>(s, c, n, V::load(l.tan_over_2h + k), inv_h2);
    lap = V::add(lap, theta_term<V>(c, w, e, V::load(l.theta_lap + k)));
    const auto g = grad_full<V>(s, n, w, e, V::load(l.theta_grad + k), inv_2h);
    V::store(out + k, rhs<V>(c, lap, g));
  }
  for (; k < l.count; ++k) {
    const double c = l.center[k];
    const double lap = scalar_ops::laplacian_full(l.south[k], c, l.north[k], l.west[k], l.east[k],
                                                  l.tan_over_2h[k], l.theta_lap[k], l.inv_h2);
    const double g = scalar_ops::grad_sq_full(l.south[k], l.north[k], l.west[k], l.east[k],
                                              l.theta_grad[k], l.inv_2h);
    out[k] = scalar_ops::flow_rhs(c, lap, g);
  }
}

template <class V>
void axpy(std::size_t n, const double* y, double a, const double* k, double* out) {
  const auto av = V::set1(a);
  std::size_t i = 0;
  for (; i + V::width <= n; i += V::width)
    V::store(out + i, V::add(V::load(y + i), V::mul(av, V::load(k + i))));
  for (; i < n; ++i) out[i] = y[i] + a * k[i];
}

template <class V>
void rk4_combine(std::size_t n, const double* y, double dt6, const double* k1, const double* k2,
                 const double* k3, const double* k4, double* out) {
  const auto d = V::set1(dt6);
  std::size_t i = 0;
  for (; i + V::width <= n; i += V::width) {
    const auto mid = V::add(V::load(k2 + i), V::load(k3 + i));
    const auto sum = V::add(V::add(V::load(k1 + i), V::load(k4 + i)), V::add(mid, mid));
    V::store(out + i, V::add(V::load(y + i), V::mul(d, sum)));
  }
  for (; i < n; ++i) out[i] = scalar_ops::rk4(y[i], dt6, k1[i], k2[i], k3[i], k4[i]);
}

template <class V>
KernelTable make_table(std::string_view name) {
  return KernelTable{name, &laplacian<V>, &grad_sq<V>, &flow_rhs<V>, &axpy<V>, &rk4_combine<V>};
}

}  // namespace ancientflow::kernels::simd_body
