#include "ancientflow/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ancientflow/errors.hpp"

namespace ancientflow {
namespace {

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
  if (!(t < 0.0)) throw DomainError("closed forms are defined for t < 0, got t = " + std::to_string(t));
}

void require_latitude(double psi) {
  if (!(std::abs(psi) <= kPi / 2 + 1e-15)) {
    throw DomainError("latitude out of range: " + std::to_string(psi));
  }
}

// A + B = μ(coth - tanh)(2μ|t|) = 2μ / sinh(4μ|t|), free of cancellation.
double rosenau_a_plus_b(double mu, double t) { return 2.0 * mu / std::sinh(4.0 * mu * -t); }

}  // namespace

ClosedFormSolution ClosedFormSolution::rosenau(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("Rosenau solution needs mu > 0, got " + std::to_string(mu));
  }
  return ClosedFormSolution(SolutionKind::Rosenau, mu);
}

ClosedFormSolution ClosedFormSolution::contracting_sphere() {
  return ClosedFormSolution(SolutionKind::ContractingSphere, 0.0);
}

double ClosedFormSolution::coeff_a(double t) const {
  require_time(t);
  if (kind_ == SolutionKind::ContractingSphere) return 1.0 / (2.0 * -t);
  return -mu_ / std::tanh(2.0 * mu_ * t);
}

double ClosedFormSolution::coeff_b(double t) const {
  require_time(t);
  if (kind_ == SolutionKind::ContractingSphere) return 0.0;
  return mu_ * std::tanh(2.0 * mu_ * t);
}

double eval_v(const ClosedFormSolution& sol, double psi, double t) {
  require_time(t);
  require_latitude(psi);
  if (sol.kind() == SolutionKind::ContractingSphere) return 1.0 / (2.0 * -t);
  // A + B sin²ψ written as (A + B) + (-B) cos²ψ so the pole values keep full
  // relative precision.
  const double c = std::cos(psi);
  return rosenau_a_plus_b(sol.mu(), t) - sol.coeff_b(t) * c * c;
}

VDerivatives eval_v_derivatives(const ClosedFormSolution& sol, double psi, double t) {
  require_time(t);
  require_latitude(psi);
  VDerivatives d;
  if (sol.kind() == SolutionKind::ContractingSphere) {
    d.v_t = 1.0 / (2.0 * t * t);
    return d;
  }
  const double mu = sol.mu();
  const double b = sol.coeff_b(t);
  const double s = std::sin(psi);
  const double sh = std::sinh(2.0 * mu * t);
  const double ch = std::cosh(2.0 * mu * t);
  d.v_t = 2.0 * mu * mu / (sh * sh) + 2.0 * mu * mu / (ch * ch) * s * s;
  d.v_psi = b * std::sin(2.0 * psi);
  d.v_psipsi = 2.0 * b * std::cos(2.0 * psi);
  d.v_psipsipsi = -4.0 * b * std::sin(2.0 * psi);
  return d;
}

double pde_residual(const ClosedFormSolution& sol, double psi, double t) {
  const double v = eval_v(sol, psi, t);
  const VDerivatives d = eval_v_derivatives(sol, psi, t);
  const double s = std::sin(psi);
  // Δv = v_ψψ - tanψ v_ψ = 2B cos2ψ - 2B sin²ψ for v = A + B sin²ψ.
  const double lap = sol.kind() == SolutionKind::Rosenau ? 2.0 * sol.coeff_b(t) * (1.0 - 3.0 * s * s)
                                                         : 0.0;
  return d.v_t - (v * lap - d.v_psi * d.v_psi + 2.0 * v * v);
}

double limit_profile(double psi, double c0) {
  const double c = std::cos(psi);
  return c0 * c * c;
}

double closed_form_Qx(const ClosedFormSolution& sol, double psi, double t) {
  if (!(std::abs(psi) < kPi / 2)) {
    throw DomainError("closed_form_Qx needs |psi| < pi/2, got " + std::to_string(psi));
  }
  const VDerivatives d = eval_v_derivatives(sol, psi, t);
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  return -2.0 * c * d.v_psi + 3.0 * (d.v_psi / c + s * d.v_psipsi) + c * d.v_psipsipsi;
}

double AreaCheck::relative_error() const { return std::abs(quadrature - exact) / exact; }

AreaCheck closed_form_area(const ClosedFormSolution& sol, double t) {
  require_time(t);
  AreaCheck out;
  out.exact = 8.0 * kPi * -t;
  if (sol.kind() == SolutionKind::ContractingSphere) {
    out.quadrature = 4.0 * kPi * (2.0 * -t);
    return out;
  }
  // ∫ dV / v = 4π ∫_0^1 ds / (A + B s²) with s = sinψ; the integrand peaks at
  // s = 1, where tanh-sinh clusters its nodes. Near the upper endpoint the
  // quadrature hands over xc = 1 - s exactly; near s = 0 it passes -s.
  const double a_plus_b = rosenau_a_plus_b(sol.mu(), t);
  const double minus_b = -sol.coeff_b(t);
  auto integrand = [&](double s, double xc) {
    const double gap = xc > 0.0 ? xc : 1.0 - s;
    return 1.0 / (a_plus_b + minus_b * gap * (2.0 - gap));
  };
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  const double half = integrator.integrate(integrand, 0.0, 1.0, 1e-14);
  out.quadrature = 4.0 * kPi * half;
  return out;
}

AreaCheck rosenau_area(double mu, double t) {
  return closed_form_area(ClosedFormSolution::rosenau(mu), t);
}

ScalarField sample_v(const ClosedFormSolution& sol, const GridPtr& grid, double t) {
  return ScalarField::from_function(grid, [&](double psi, double) { return eval_v(sol, psi, t); });
}

}  // namespace ancientflow
