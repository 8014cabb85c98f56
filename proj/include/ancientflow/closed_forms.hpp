#pragma once

#include "ancientflow/grid.hpp"

namespace ancientflow {

enum class SolutionKind { Rosenau, ContractingSphere };

/// Exact ancient solutions of v_t = vΔv - |∇v|² + 2v², v = 1/u.
///
///   Rosenau(μ):        v = A(t) + B(t) sin²ψ,  A = -μ coth(2μt),  B = μ tanh(2μt)
///   ContractingSphere: v = 1 / (2(-t))
///
/// Both are defined for t < 0 only.
class ClosedFormSolution {
public:
  static ClosedFormSolution rosenau(double mu);
  static ClosedFormSolution contracting_sphere();

  SolutionKind kind() const noexcept { return kind_; }
  /// μ for Rosenau, 0 for the contracting sphere.
  double mu() const noexcept { return mu_; }
  /// Constant of the t -> -∞ profile C₀cos²ψ: μ for Rosenau, 0 for the sphere.
  double c0() const noexcept { return mu_; }

  /// Rosenau coefficients; A = 1/(2|t|), B = 0 for the contracting sphere.
  double coeff_a(double t) const;
  double coeff_b(double t) const;

private:
  ClosedFormSolution(SolutionKind kind, double mu) : kind_(kind), mu_(mu) {}
  SolutionKind kind_;
  double mu_;
};

struct VDerivatives {
  double v_t = 0.0;
  double v_psi = 0.0;
  double v_psipsi = 0.0;
  double v_psipsipsi = 0.0;
};

/// Throws DomainError for t >= 0 or |psi| > π/2.
double eval_v(const ClosedFormSolution& sol, double psi, double t);

/// Hand-coded analytic derivatives; for Rosenau
///   v_ψ = B sin2ψ, v_ψψ = 2B cos2ψ, v_ψψψ = -4B sin2ψ,
///   v_t = 2μ²/sinh²(2μt) + 2μ²/cosh²(2μt) sin²ψ.
VDerivatives eval_v_derivatives(const ClosedFormSolution& sol, double psi, double t);

/// v_t - (vΔv - |∇v|² + 2v²) with every term analytic.
double pde_residual(const ClosedFormSolution& sol, double psi, double t);

/// C₀cos²ψ.
double limit_profile(double psi, double c0);

/// Q_x = -2cosψ v_ψ + 3(secψ v_ψ + sinψ v_ψψ) + cosψ v_ψψψ from analytic
/// derivatives. Throws DomainError unless |psi| < π/2.
double closed_form_Qx(const ClosedFormSolution& sol, double psi, double t);

struct AreaCheck {
  double exact = 0.0;       // 8π|t|
  double quadrature = 0.0;  // adaptive quadrature of ∫ dV / v
  double relative_error() const;
};

/// Area of g = u ds_p² for the closed form, with an independent quadrature.
AreaCheck closed_form_area(const ClosedFormSolution& sol, double t);
AreaCheck rosenau_area(double mu, double t);

/// Samples v(·, t) on a grid.
ScalarField sample_v(const ClosedFormSolution& sol, const GridPtr& grid, double t);

}  // namespace ancientflow
