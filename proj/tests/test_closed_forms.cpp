#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ancientflow/closed_forms.hpp"
#include "ancientflow/errors.hpp"

using namespace ancientflow;

namespace {
constexpr double kPi = std::numbers::pi;
const ClosedFormSolution kRosenau1 = ClosedFormSolution::rosenau(1.0);
const ClosedFormSolution kSphere = ClosedFormSolution::contracting_sphere();

// High-precision oracles, evaluated offline.
constexpr double kCoth2 = 1.0373147207275481;
constexpr double kTwoOverSinh4 = 0.0732871406517312;
constexpr double kTanh2 = 0.9640275800758169;
constexpr double kTwoOverSinh8 = 1.3418506626154461e-3;
constexpr double kEightPi = 25.132741228718346;
}  // namespace

TEST(ClosedForms, Construction) {
  EXPECT_EQ(kRosenau1.kind(), SolutionKind::Rosenau);
  EXPECT_EQ(kRosenau1.c0(), 1.0);
  EXPECT_EQ(ClosedFormSolution::rosenau(2.5).c0(), 2.5);
  EXPECT_EQ(kSphere.kind(), SolutionKind::ContractingSphere);
  EXPECT_THROW(ClosedFormSolution::rosenau(0.0), DomainError);
  EXPECT_THROW(ClosedFormSolution::rosenau(-1.0), DomainError);
}

TEST(ClosedForms, EvalV) {
  EXPECT_EQ(eval_v(kSphere, 0.3, -0.5), 1.0);
  EXPECT_NEAR(eval_v(kRosenau1, 0.0, -1.0), kCoth2, 1e-15);
  EXPECT_NEAR(eval_v(kRosenau1, kPi / 2, -1.0), kTwoOverSinh4, 1e-15);
  EXPECT_NEAR(eval_v(kRosenau1, -kPi / 2, -1.0), kTwoOverSinh4, 1e-15);
}

TEST(ClosedForms, RejectsNonNegativeTime) {
  EXPECT_THROW(eval_v(kRosenau1, 0.0, 0.0), DomainError);
  EXPECT_THROW(eval_v(kSphere, 0.0, 1.0), DomainError);
  EXPECT_THROW(eval_v_derivatives(kRosenau1, 0.0, 0.0), DomainError);
  EXPECT_THROW(pde_residual(kRosenau1, 0.0, 0.5), DomainError);
  EXPECT_THROW(rosenau_area(1.0, 0.0), DomainError);
  EXPECT_THROW(eval_v(kRosenau1, 2.0, -1.0), DomainError);
}

TEST(ClosedForms, CoefficientInvariants) {
  for (double mu : {0.5, 1.0, 2.0}) {
    const auto sol = ClosedFormSolution::rosenau(mu);
    for (double t : {-50.0, -10.0, -2.0, -1.0, -0.5, -0.1, -1e-3}) {
      const double a = sol.coeff_a(t), b = sol.coeff_b(t);
      EXPECT_GT(a, 0.0);
      EXPECT_LT(b, 0.0);
      EXPECT_GE(b, -mu);
      EXPECT_GE(a + b, 0.0);
      EXPECT_NEAR(a * -b, mu * mu, 1e-12 * mu * mu);
    }
  }
}

TEST(ClosedForms, Derivatives) {
  const VDerivatives s = eval_v_derivatives(kSphere, 0.7, -1.0);
  EXPECT_EQ(s.v_t, 0.5);
  EXPECT_EQ(s.v_psi, 0.0);
  EXPECT_EQ(s.v_psipsi, 0.0);
  EXPECT_EQ(s.v_psipsipsi, 0.0);
  EXPECT_NEAR(eval_v_derivatives(kRosenau1, kPi / 4, -1.0).v_psi, -kTanh2, 1e-15);
  EXPECT_EQ(eval_v_derivatives(kRosenau1, 0.0, -1.0).v_psi, 0.0);
}

TEST(ClosedForms, DerivativesMatchFiniteDifferences) {
  const double psi = 0.4, t = -0.8, h = 1e-5;
  const VDerivatives d = eval_v_derivatives(kRosenau1, psi, t);
  auto v = [&](double p, double s) { return eval_v(kRosenau1, p, s); };
  EXPECT_NEAR(d.v_t, (v(psi, t + h) - v(psi, t - h)) / (2 * h), 1e-8);
  EXPECT_NEAR(d.v_psi, (v(psi + h, t) - v(psi - h, t)) / (2 * h), 1e-8);
  EXPECT_NEAR(d.v_psipsi, (v(psi + h, t) - 2 * v(psi, t) + v(psi - h, t)) / (h * h), 1e-4);
  const double g = 1e-3;
  const double d3 = (v(psi + 2 * g, t) - 2 * v(psi + g, t) + 2 * v(psi - g, t) - v(psi - 2 * g, t)) / (2 * g * g * g);
  EXPECT_NEAR(d.v_psipsipsi, d3, 1e-4);
}

TEST(ClosedForms, ResidualVanishesOnSample) {
  for (const auto& sol : {ClosedFormSolution::rosenau(0.5), kRosenau1, ClosedFormSolution::rosenau(2.0), kSphere}) {
    double worst = 0.0;
    for (int l = 0; l < 200; ++l) {
      const double t = -5.0 + 4.9 * l / 199.0;
      for (int k = 0; k < 200; ++k) {
        const double psi = -kPi / 2 + kPi * (k + 0.5) / 200;
        worst = std::max(worst, std::abs(pde_residual(sol, psi, t)));
      }
    }
    EXPECT_LE(worst, 1e-10);
  }
  EXPECT_EQ(pde_residual(kSphere, 0.0, -1.0), 0.0);
}

TEST(ClosedForms, PerturbedSolutionHasResidual) {
  // Residual of v + 0.01, whose time derivative equals that of v.
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double psi = -1.5 + 3.0 * k / 49;
    const double v = eval_v(kRosenau1, psi, -1.0) + 0.01;
    const VDerivatives d = eval_v_derivatives(kRosenau1, psi, -1.0);
    const double b = kRosenau1.coeff_b(-1.0);
    const double lap = 2 * b * (1 - 3 * std::sin(psi) * std::sin(psi));
    const double rhs = v * lap - d.v_psi * d.v_psi + 2 * v * v;
    worst = std::max(worst, std::abs(d.v_t - rhs));
  }
  EXPECT_GT(worst, 1e-4);
}

TEST(ClosedForms, LimitProfile) {
  EXPECT_NEAR(limit_profile(kPi / 2, 1.0), 0.0, 1e-30);
  EXPECT_NEAR(limit_profile(-kPi / 2, 3.0), 0.0, 1e-30);
  EXPECT_EQ(limit_profile(0.0, 2.0), 2.0);
  double sup = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double psi = -kPi / 2 + kPi * k / 2000;
    sup = std::max(sup, std::abs(eval_v(kRosenau1, psi, -2.0) - limit_profile(psi, 1.0)));
  }
  EXPECT_NEAR(sup, kTwoOverSinh8, 1e-12);
  // At t = -10 the gap 2/sinh 40 = 1.7e-17 sits below the round-off of v.
  EXPECT_NEAR(eval_v(kRosenau1, kPi / 2, -10.0), 2.0 / std::sinh(40.0), 1e-30);
}

TEST(ClosedForms, QxVanishes) {
  for (const auto& sol : {kRosenau1, ClosedFormSolution::rosenau(2.0), kSphere}) {
    for (double t : {-5.0, -1.0, -0.1}) {
      for (int k = 0; k < 101; ++k) {
        const double psi = -1.5 + 3.0 * k / 100;
        EXPECT_LE(std::abs(closed_form_Qx(sol, psi, t)), 1e-12);
      }
    }
  }
  EXPECT_EQ(closed_form_Qx(kSphere, 0.3, -1.0), 0.0);
  EXPECT_THROW(closed_form_Qx(kRosenau1, kPi / 2, -1.0), DomainError);
}

TEST(ClosedForms, Area) {
  EXPECT_NEAR(rosenau_area(1.0, -1.0).exact, kEightPi, 1e-12);
  EXPECT_NEAR(rosenau_area(1.0, -1.0 / (8 * kPi)).exact, 1.0, 1e-14);
  const AreaCheck sphere = closed_form_area(kSphere, -1.0);
  EXPECT_NEAR(sphere.quadrature, kEightPi, 1e-12);
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double t : {-10.0, -5.0, -1.0, -0.1, -1e-3}) {
      EXPECT_LE(rosenau_area(mu, t).relative_error(), 1e-6) << "mu=" << mu << " t=" << t;
    }
  }
}

TEST(ClosedForms, MonotoneInTime) {
  const double ladder[] = {-50, -20, -10, -5, -2, -1, -0.5};
  for (int k = 0; k <= 20; ++k) {
    const double psi = -kPi / 2 + kPi * k / 20;
    for (std::size_t i = 1; i < std::size(ladder); ++i) {
      EXPECT_LE(eval_v(kRosenau1, psi, ladder[i - 1]), eval_v(kRosenau1, psi, ladder[i]));
    }
    EXPECT_GT(eval_v_derivatives(kRosenau1, psi, -3.0).v_t, 0.0);
  }
}

TEST(ClosedForms, SampleOnGrid) {
  const ScalarField v = sample_v(kRosenau1, build_grid(16, 8), -1.0);
  EXPECT_EQ(v.size(), 128u);
  EXPECT_DOUBLE_EQ(v(3, 5), eval_v(kRosenau1, v.grid().psi_nodes[3], -1.0));
  EXPECT_EQ(v(3, 5), v(3, 0));
}
