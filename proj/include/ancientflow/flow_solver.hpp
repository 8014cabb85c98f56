#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ancientflow/grid.hpp"

namespace ancientflow {

/// v = 1/u at time t < 0.
struct FlowState {
  double t = -1.0;
  ScalarField v;
};

enum class TimeScheme { RK4 };
enum class EvolveVariable { V, U };

struct SolverConfig {
  TimeScheme scheme = TimeScheme::RK4;
  double cfl_safety = 0.2;
  double dt_max = 1e-2;
  EvolveVariable evolve_variable = EvolveVariable::V;
};

/// Throws DomainError if cfl_safety is outside (0, 1] or dt_max <= 0.
void validate(const SolverConfig& config);

/// v_t = vΔv - |∇v|² + 2v².
ScalarField rhs_v(const FlowState& state);

/// u_t = Δ log u - 2. Kept as a cross-check of the v formulation.
ScalarField rhs_u(const ScalarField& u);

/// cfl_safety · min over nodes of h_eff² / (4v), with
/// h_eff² = min(h_psi², h_theta² cos²ψ_i) at latitude i (h_psi² when
/// axisymmetric), capped by dt_max and by (-t)/10.
double stable_dt(const FlowState& state, const SolverConfig& config);

/// One classical RK4 step. Throws TimeCrossedZero if t + dt >= 0 and
/// PositivityLost if min(v) <= 0 afterwards.
FlowState step(const FlowState& state, double dt, const SolverConfig& config);

using Observer = std::function<void(const FlowState& state, std::size_t step)>;

struct Observation {
  std::size_t step = 0;
  double t = 0.0;
};

struct EvolveResult {
  FlowState state;
  std::vector<Observation> log;
  std::size_t steps = 0;
};

/// Steps with stable_dt until t_end, shortening the last step to land on it
/// exactly. Observers run serially in registration order at step 0, every
/// `cadence` steps and at the final state (cadence 0 means start and end only).
EvolveResult evolve(FlowState state, double t_end, const SolverConfig& config,
                    std::span<const Observer> observers = {}, std::size_t cadence = 0);

/// ∫ |1/v_a - 1/v_b| dV. Throws DomainError on grid or time mismatch.
double l1_rotation_distance(const FlowState& a, const FlowState& b);

}  // namespace ancientflow
