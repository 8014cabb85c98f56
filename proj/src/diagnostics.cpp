#include "ancientflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ancientflow/errors.hpp"
#include "ancientflow/sphere_ops.hpp"

namespace ancientflow {
namespace {

struct PsiDerivatives {
  ScalarField d1, d2, d3;
};

PsiDerivatives psi_derivatives(const ScalarField& v) {
  return {partial_psi(v, 1), partial_psi(v, 2), partial_psi(v, 3)};
}

ScalarField qx_from(const ScalarField& v, const PsiDerivatives& d) {
  const LatLonGrid& g = v.grid();
  ScalarField q(v.grid_ptr());
  for (int i = 0; i < g.n_psi; ++i) {
    const double c = g.cos_psi[i], s = g.sin_psi[i], sec = g.sec_psi[i];
    for (int j = 0; j < g.n_theta; ++j) {
      const double v1 = d.d1(i, j), v2 = d.d2(i, j), v3 = d.d3(i, j);
      q(i, j) = -2.0 * c * v1 + 3.0 * (sec * v1 + s * v2) + c * v3;
    }
  }
  return q;
}

ScalarField curvature_from(const ScalarField& v, const ScalarField& lap, const ScalarField& grad) {
  ScalarField r(v.grid_ptr());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = lap[k] - grad[k] / v[k] + 2.0 * v[k];
  return r;
}

template <class Fn>
double node_sup(const LatLonGrid& g, Fn&& fn) {
  double m = 0.0;
  for (int i = 0; i < g.n_psi; ++i)
    for (int j = 0; j < g.n_theta; ++j) m = std::max(m, fn(i, j));
  return m;
}

}  // namespace

void validate(const MonitorConfig& config) {
  if (!(config.a_exponent > 0.0 && config.a_exponent < 3.0)) {
    throw DomainError("a_exponent must lie in (0, 3), got " + std::to_string(config.a_exponent));
  }
  if (!(config.alpha_exponent > 0.0 && config.alpha_exponent < 1.0)) {
    throw DomainError("alpha_exponent must lie in (0, 1), got " +
                      std::to_string(config.alpha_exponent));
  }
}

std::array<double, 14> to_row(const BoundReport& r) {
  return {r.t,          r.lemma1_sup,  r.cor4_sup,    r.cor5_sup,       r.h_sup,
          r.h_psi_sup,  r.cond6_const, r.cond62_sup,  r.holder41_const, r.r_min,
          r.r_max,      r.h_functional, r.area,       r.symmetry_defect};
}

BoundReport from_row(const std::array<double, 14>& x) {
  BoundReport r;
  r.t = x[0];
  r.lemma1_sup = x[1];
  r.cor4_sup = x[2];
  r.cor5_sup = x[3];
  r.h_sup = x[4];
  r.h_psi_sup = x[5];
  r.cond6_const = x[6];
  r.cond62_sup = x[7];
  r.holder41_const = x[8];
  r.r_min = x[9];
  r.r_max = x[10];
  r.h_functional = x[11];
  r.area = x[12];
  r.symmetry_defect = x[13];
  return r;
}

ScalarField scalar_curvature(const FlowState& state) {
  return curvature_from(state.v, laplace_beltrami(state.v), grad_sq_sphere(state.v));
}

ScalarField f_field(const FlowState& state) { return laplace_beltrami(state.v); }

ScalarField qx_field(const FlowState& state) {
  return qx_from(state.v, psi_derivatives(state.v));
}

ScalarField qx_psi_field(const FlowState& state) {
  const ScalarField& v = state.v;
  const LatLonGrid& g = v.grid();
  const PsiDerivatives d = psi_derivatives(v);
  const ScalarField d4 = partial_psi(v, 4);
  ScalarField out(v.grid_ptr());
  for (int i = 0; i < g.n_psi; ++i) {
    const double c = g.cos_psi[i], s = g.sin_psi[i], sec = g.sec_psi[i], tn = g.tan_psi[i];
    for (int j = 0; j < g.n_theta; ++j) {
      const double v1 = d.d1(i, j), v2 = d.d2(i, j), v3 = d.d3(i, j), v4 = d4(i, j);
      out(i, j) = 2.0 * s * v1 - 2.0 * c * v2 + 3.0 * (sec * tn * v1 + sec * v2 + c * v2) +
                  2.0 * s * v3 + c * v4;
    }
  }
  return out;
}

ScalarField h_field(const FlowState& state) {
  return qx_field(state).map([](double q) { return q * q; });
}

double h_functional(const FlowState& state) {
  ScalarField h = h_field(state);
  for (std::size_t k = 0; k < h.size(); ++k) h[k] /= state.v[k];
  return integrate_sphere(h);
}

double outer_band_h_max(const FlowState& state, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("band fraction must lie in (0, 1]");
  const LatLonGrid& g = state.v.grid();
  const ScalarField h = h_field(state);
  const int rows = std::max(1, static_cast<int>(std::floor(fraction * g.n_psi / 2.0)));
  double m = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < g.n_theta; ++j) {
      m = std::max(m, h(r, j));
      m = std::max(m, h(g.n_psi - 1 - r, j));
    }
  }
  return m;
}

double symmetry_defect(const FlowState& state) {
  const LatLonGrid& g = state.v.grid();
  if (g.axisymmetric()) return 0.0;
  double defect = 0.0;
  for (int i = 0; i < g.n_psi; ++i) {
    double mean = 0.0;
    for (int j = 0; j < g.n_theta; ++j) mean += 1.0 / state.v(i, j);
    mean /= g.n_theta;
    for (int j = 0; j < g.n_theta; ++j) defect = std::max(defect, std::abs(1.0 / state.v(i, j) - mean));
  }
  return defect;
}

double harnack_rate(const FlowState& earlier, const FlowState& later) {
  if (!earlier.v.grid().same_shape(later.v.grid())) throw DomainError("harnack_rate: grid mismatch");
  const double dt = later.t - earlier.t;
  if (!(dt > 0.0)) throw DomainError("harnack_rate needs later.t > earlier.t");
  const ScalarField r0 = scalar_curvature(earlier);
  const ScalarField r1 = scalar_curvature(later);
  double rate = (r1[0] - r0[0]) / dt;
  for (std::size_t k = 1; k < r0.size(); ++k) rate = std::min(rate, (r1[k] - r0[k]) / dt);
  return rate;
}

double shi_monitor(const FlowState& state) {
  const LatLonGrid& g = state.v.grid();
  const ScalarField dr = partial_psi(scalar_curvature(state), 1);
  return node_sup(g, [&](int i, int j) { return std::abs(g.cos_psi[i] * dr(i, j)); });
}

Eq67Check eq67_pointwise_check(const FlowState& state) {
  const ScalarField& v = state.v;
  const LatLonGrid& g = v.grid();
  const PsiDerivatives d = psi_derivatives(v);
  const ScalarField q = qx_from(v, d);
  Eq67Check out;
  for (int i = 0; i < g.n_psi; ++i) {
    const double c = g.cos_psi[i], s = g.sin_psi[i], sec = g.sec_psi[i];
    for (int j = 0; j < g.n_theta; ++j) {
      const double v1 = d.d1(i, j), v2 = d.d2(i, j), v3 = d.d3(i, j);
      const double mid = sec * v1 + s * v2;
      const double bound = 18.0 * (c * c * v1 * v1 + mid * mid + c * c * v3 * v3);
      const double h = q(i, j) * q(i, j);
      out.max_violation = std::max(out.max_violation, h - bound);
    }
  }
  out.holds = out.max_violation <= 0.0;
  out.max_violation = std::max(out.max_violation, 0.0);
  return out;
}

BoundReport bound_report(const FlowState& state, const MonitorConfig& config) {
  validate(config);
  const ScalarField& v = state.v;
  const LatLonGrid& g = v.grid();
  const ScalarField lap = laplace_beltrami(v);
  const ScalarField grad = grad_sq_sphere(v);
  const PsiDerivatives d = psi_derivatives(v);
  const ScalarField q = qx_from(v, d);
  const ScalarField q_psi = qx_psi_field(state);
  const ScalarField r = curvature_from(v, lap, grad);
  const ScalarField df = partial_psi(lap, 1);

  BoundReport out;
  out.t = state.t;
  out.lemma1_sup = node_sup(g, [&](int i, int j) {
    return std::abs(lap(i, j)) + grad(i, j) / v(i, j);
  });
  out.cor4_sup = node_sup(g, [&](int i, int j) {
    return std::abs(d.d2(i, j)) + std::abs(g.sec_psi[i] * d.d1(i, j));
  });
  out.cor5_sup = node_sup(g, [&](int i, int j) { return std::abs(g.cos_psi[i] * d.d3(i, j)); });
  out.h_sup = node_sup(g, [&](int i, int j) { return q(i, j) * q(i, j); });
  out.h_psi_sup = node_sup(g, [&](int i, int j) { return 2.0 * std::abs(q(i, j)) * std::abs(q_psi(i, j)); });
  if (!g.axisymmetric()) {
    const ScalarField vt = partial_theta(v);
    out.cond6_const = node_sup(g, [&](int i, int j) {
      const double c = g.cos_psi[i];
      return vt(i, j) * vt(i, j) / (std::pow(v(i, j), 1.0 + config.a_exponent) * c * c);
    });
  }
  out.cond62_sup = node_sup(g, [&](int i, int j) {
    return std::pow(g.cos_psi[i], 1.0 - config.alpha_exponent) * std::abs(d.d3(i, j));
  });
  out.holder41_const = node_sup(g, [&](int i, int j) { return std::abs(df(i, j)); });
  out.r_min = r.min();
  out.r_max = r.max();

  ScalarField h_over_v(v.grid_ptr());
  ScalarField u(v.grid_ptr());
  for (std::size_t k = 0; k < v.size(); ++k) {
    h_over_v[k] = q[k] * q[k] / v[k];
    u[k] = 1.0 / v[k];
  }
  out.h_functional = integrate_sphere(h_over_v);
  out.area = integrate_sphere(u);
  out.symmetry_defect = symmetry_defect(state);
  return out;
}

}  // namespace ancientflow
