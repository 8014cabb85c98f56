#pragma once

#include "ancientflow/grid.hpp"

namespace ancientflow {

// Differential operators of the round-sphere chart. Ghost values across a pole
// follow f(-π/2 - δ, θ) = f(-π/2 + δ, θ + π) (likewise at +π/2); in
// axisymmetric mode this is an even reflection. All stencils are second-order
// centered.

/// Δf = f_ψψ - tanψ f_ψ + sec²ψ f_θθ. The θ term is dropped when n_theta == 1.
ScalarField laplace_beltrami(const ScalarField& field);

/// |∇f|² = f_ψ² + sec²ψ f_θ².
ScalarField grad_sq_sphere(const ScalarField& field);

/// ∂_ψ^order f for order in 1..4. Orders 3 and 4 use five-point stencils.
ScalarField partial_psi(const ScalarField& field, int order);

/// Centered ∂_θ f; zero in axisymmetric mode.
ScalarField partial_theta(const ScalarField& field);

/// ∫ f dV with dV = cosψ dψ dθ: midpoint in ψ, uniform in θ. Summation order
/// is fixed (θ first, then ψ ascending) so the result is bitwise reproducible.
double integrate_sphere(const ScalarField& field);

/// Exact cyclic shift f(ψ, θ_j) -> f(ψ, θ_{j+k}). Throws DomainError for
/// axisymmetric fields.
ScalarField rotate_theta(const ScalarField& field, int k);

/// Mercator projection: x = asinh(tanψ), so cosh x = secψ. Throws DomainError
/// unless |psi| < π/2.
double mercator_x(double psi);
/// Inverse map ψ = atan(sinh x).
double mercator_psi(double x);

}  // namespace ancientflow
