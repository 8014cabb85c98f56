#pragma once

#include <array>
#include <string_view>

#include "ancientflow/flow_solver.hpp"
#include "ancientflow/grid.hpp"

namespace ancientflow {

/// Exponents of the growth hypotheses: v_θ² ≤ C v^{1+a} cos²ψ with 0 < a < 3,
/// and (cosψ)^{1-α}|v_ψψψ| ≤ C with 0 < α < 1.
struct MonitorConfig {
  double a_exponent = 1.0;
  double alpha_exponent = 0.5;
  std::size_t cadence = 1000;
};

/// Throws DomainError when an exponent is out of range.
void validate(const MonitorConfig& config);

/// Sup-norm monitors of one state. All sups are grid-node maxima.
struct BoundReport {
  double t = 0.0;
  double lemma1_sup = 0.0;      // sup |Δv| + |∇v|²/v
  double cor4_sup = 0.0;        // sup |v_ψψ| + |secψ v_ψ|
  double cor5_sup = 0.0;        // sup |cosψ v_ψψψ|
  double h_sup = 0.0;           // sup H
  double h_psi_sup = 0.0;       // sup 2|Q_x||Q_xψ|
  double cond6_const = 0.0;     // sup v_θ² / (v^{1+a} cos²ψ)
  double cond62_sup = 0.0;      // sup (cosψ)^{1-α}|v_ψψψ|
  double holder41_const = 0.0;  // sup |∂_ψ Δv|
  double r_min = 0.0;
  double r_max = 0.0;
  double h_functional = 0.0;    // ∫ H/v dV
  double area = 0.0;            // ∫ 1/v dV
  double symmetry_defect = 0.0;
};

inline constexpr std::array<std::string_view, 14> kBoundReportColumns = {
    "t",          "lemma1_sup",     "cor4_sup",     "cor5_sup",     "h_sup",
    "h_psi_sup",  "cond6_const",    "cond62_sup",   "holder41_const", "r_min",
    "r_max",      "h_functional",   "area",         "symmetry_defect"};

/// Values in kBoundReportColumns order.
std::array<double, 14> to_row(const BoundReport& report);
BoundReport from_row(const std::array<double, 14>& row);

/// R = Δv - |∇v|²/v + 2v (equals v_t / v along the flow).
ScalarField scalar_curvature(const FlowState& state);

/// f = Δv.
ScalarField f_field(const FlowState& state);

/// Q_x = -2cosψ v_ψ + 3(secψ v_ψ + sinψ v_ψψ) + cosψ v_ψψψ, evaluated per
/// θ-slice. On non-axisymmetric states this is a diagnostic extension.
ScalarField qx_field(const FlowState& state);

/// ψ-derivative of Q_x:
/// 2sinψ v_ψ - 2cosψ v_ψψ + 3(secψ tanψ v_ψ + secψ v_ψψ + cosψ v_ψψ)
///   + 2sinψ v_ψψψ + cosψ v_ψψψψ.
ScalarField qx_psi_field(const FlowState& state);

/// H = Q_x².
ScalarField h_field(const FlowState& state);

/// ∫ H/v dV.
double h_functional(const FlowState& state);

/// max H over the band |ψ| >= ψ_0 where the band holds the outer `fraction`
/// of latitude rows (at least one row per hemisphere).
double outer_band_h_max(const FlowState& state, double fraction);

/// sup over nodes of |u - ū(ψ)| with ū the θ-average of u = 1/v.
double symmetry_defect(const FlowState& state);

/// min over nodes of (R(later) - R(earlier)) / (t_later - t_earlier).
double harnack_rate(const FlowState& earlier, const FlowState& later);

/// sup |cosψ ∂_ψ R|.
double shi_monitor(const FlowState& state);

struct Eq67Check {
  bool holds = true;
  double max_violation = 0.0;
};

/// Checks H ≤ 18[cos²ψ v_ψ² + (secψ v_ψ + sinψ v_ψψ)² + cos²ψ v_ψψψ²] at every node.
Eq67Check eq67_pointwise_check(const FlowState& state);

BoundReport bound_report(const FlowState& state, const MonitorConfig& config);

}  // namespace ancientflow
