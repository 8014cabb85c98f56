#include "ancientflow/flow_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ancientflow/errors.hpp"
#include "ancientflow/kernels.hpp"
#include "ancientflow/sphere_ops.hpp"
#include "padded_field.hpp"

namespace ancientflow {
namespace {

void rhs_v_into(const ScalarField& v, ScalarField& out) {
  const detail::PaddedField padded(v);
  const auto& k = kernels::active();
  detail::for_each_line(v.grid(), padded, out.data(),
                        [&](const kernels::StencilLine& line, double* dst) { k.flow_rhs(line, dst); });
}

void rhs_u_into(const ScalarField& u, ScalarField& out) {
  out = laplace_beltrami(u.map([](double x) { return std::log(x); }));
  for (double& x : out.values()) x -= 2.0;
}

// Classical RK4 on y' = rhs(y).
template <class Rhs>
ScalarField rk4_step(const ScalarField& y, double dt, Rhs&& rhs) {
  const auto& k = kernels::active();
  const std::size_t n = y.size();
  ScalarField k1(y.grid_ptr()), k2(y.grid_ptr()), k3(y.grid_ptr()), k4(y.grid_ptr());
  ScalarField stage(y.grid_ptr());
  rhs(y, k1);
  k.axpy(n, y.data(), 0.5 * dt, k1.data(), stage.data());
  rhs(stage, k2);
  k.axpy(n, y.data(), 0.5 * dt, k2.data(), stage.data());
  rhs(stage, k3);
  k.axpy(n, y.data(), dt, k3.data(), stage.data());
  rhs(stage, k4);
  ScalarField out(y.grid_ptr());
  k.rk4_combine(n, y.data(), dt / 6.0, k1.data(), k2.data(), k3.data(), k4.data(), out.data());
  return out;
}

}  // namespace

void validate(const SolverConfig& config) {
  if (!(config.cfl_safety > 0.0 && config.cfl_safety <= 1.0)) {
    throw DomainError("cfl_safety must lie in (0, 1], got " + std::to_string(config.cfl_safety));
  }
  if (!(config.dt_max > 0.0)) throw DomainError("dt_max must be positive");
}

ScalarField rhs_v(const FlowState& state) {
  ScalarField out(state.v.grid_ptr());
  rhs_v_into(state.v, out);
  return out;
}

ScalarField rhs_u(const ScalarField& u) {
  ScalarField out(u.grid_ptr());
  rhs_u_into(u, out);
  return out;
}

double stable_dt(const FlowState& state, const SolverConfig& config) {
  validate(config);
  const LatLonGrid& g = state.v.grid();
  const double hp2 = g.h_psi * g.h_psi;
  const double ht2 = g.h_theta * g.h_theta;
  double limit = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_psi; ++i) {
    double h_eff2 = hp2;
    if (!g.axisymmetric()) h_eff2 = std::min(hp2, ht2 * g.cos_psi[i] * g.cos_psi[i]);
    double v_row = 0.0;
    for (int j = 0; j < g.n_theta; ++j) v_row = std::max(v_row, state.v(i, j));
    limit = std::min(limit, h_eff2 / (4.0 * v_row));
  }
  double dt = config.cfl_safety * limit;
  dt = std::min(dt, config.dt_max);
  dt = std::min(dt, -state.t / 10.0);
  return dt;
}

FlowState step(const FlowState& state, double dt, const SolverConfig& config) {
  if (dt < 0.0) throw DomainError("negative time step");
  if (!(state.t + dt < 0.0)) throw TimeCrossedZero(state.t, dt);
  if (dt == 0.0) return state;

  FlowState next;
  next.t = state.t + dt;
  if (config.evolve_variable == EvolveVariable::V) {
    next.v = rk4_step(state.v, dt, [](const ScalarField& y, ScalarField& out) { rhs_v_into(y, out); });
  } else {
    const ScalarField u = state.v.map([](double x) { return 1.0 / x; });
    const ScalarField u_next =
        rk4_step(u, dt, [](const ScalarField& y, ScalarField& out) { rhs_u_into(y, out); });
    if (!(u_next.min() > 0.0) || !u_next.all_finite()) throw PositivityLost(next.t, 1.0 / u_next.min());
    next.v = u_next.map([](double x) { return 1.0 / x; });
  }
  const double vmin = next.v.min();
  if (!(vmin > 0.0) || !next.v.all_finite()) throw PositivityLost(next.t, vmin);
  return next;
}

EvolveResult evolve(FlowState state, double t_end, const SolverConfig& config,
                    std::span<const Observer> observers, std::size_t cadence) {
  validate(config);
  if (!(t_end < 0.0)) throw DomainError("t_end must be negative");
  if (t_end < state.t) throw DomainError("t_end precedes the current time");

  EvolveResult result;
  auto observe = [&](const FlowState& s, std::size_t n) {
    result.log.push_back({n, s.t});
    for (const Observer& obs : observers) obs(s, n);
  };

  std::size_t n = 0;
  observe(state, n);
  while (state.t < t_end) {
    double dt = stable_dt(state, config);
    bool last = false;
    if (state.t + dt >= t_end) {
      dt = t_end - state.t;
      last = true;
    }
    state = step(state, dt, config);
    if (last) state.t = t_end;
    ++n;
    if (last || (cadence > 0 && n % cadence == 0)) observe(state, n);
  }
  result.steps = n;
  result.state = std::move(state);
  return result;
}

double l1_rotation_distance(const FlowState& a, const FlowState& b) {
  if (!a.v.grid().same_shape(b.v.grid())) throw DomainError("l1_rotation_distance: grid mismatch");
  if (a.t != b.t) throw DomainError("l1_rotation_distance: time mismatch");
  ScalarField diff(a.v.grid_ptr());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = std::abs(1.0 / a.v[k] - 1.0 / b.v[k]);
  return integrate_sphere(diff);
}

}  // namespace ancientflow
