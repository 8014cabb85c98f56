#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ancientflow/closed_forms.hpp"
#include "ancientflow/diagnostics.hpp"
#include "ancientflow/errors.hpp"
#include "ancientflow/experiment.hpp"
#include "ancientflow/flow_solver.hpp"
#include "ancientflow/sphere_ops.hpp"

namespace ancientflow {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Pinned tolerances.
constexpr double kResidualTol = 1e-10;
constexpr double kQxTol = 1e-12;
constexpr double kAreaRelTol = 1e-6;
constexpr double kLimitTol = 1e-12;
constexpr double kDiscreteQxTol = 1e-3;
constexpr double kRatioLo = 3.5;
constexpr double kRatioHi = 4.5;
constexpr double kConvergenceTol = 5e-4;
constexpr double kHarnackTol = -1e-8;
constexpr double kMonotoneStepTol = 1e-8;
constexpr double kSpreadTol = 1e-12;
constexpr double kSphereTrackTol = 1e-9;
constexpr double kSlopeRelTol = 5e-3;
constexpr double kContractionSlack = 1e-8;
constexpr double kHDriftTol = 1e-6;
constexpr double kEnvelopeVariation = 0.1;
constexpr double kEnvelopeSlack = 1e-6;
constexpr double kEnvelopeFloor = 1e-6;
constexpr double kOuterBandFraction = 0.1;
constexpr int kResidualSamples = 200;
constexpr int kProfileSamples = 4001;

struct Recorder {
  RunRecord& record;

  void check(std::string name, double value, double threshold, bool passed, std::string detail = {}) {
    record.assertions.push_back({std::move(name), value, threshold, passed, std::move(detail)});
  }
  void at_most(std::string name, double value, double threshold) {
    check(std::move(name), value, threshold, value <= threshold, "<=");
  }
  void at_least(std::string name, double value, double threshold) {
    check(std::move(name), value, threshold, value >= threshold, ">=");
  }
  void above(std::string name, double value, double threshold) {
    check(std::move(name), value, threshold, value > threshold, ">");
  }
  void within(std::string name, double value, double lo, double hi) {
    check(std::move(name), value, lo, value >= lo && value <= hi,
          "in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  void note(std::string key, double value) { record.summary.emplace_back(std::move(key), value); }
};

double profile_value(PsiProfile p, double psi) {
  const double c2 = std::cos(psi) * std::cos(psi);
  return p == PsiProfile::Cos2 ? c2 : c2 * c2;
}

FlowState initial_state(const ExperimentSpec& spec, int n_psi, int n_theta) {
  const ClosedFormSolution sol = spec.solution.make();
  const GridPtr grid = build_grid(n_psi, n_theta);
  FlowState state{spec.t_start, sample_v(sol, grid, spec.t_start)};
  if (!spec.perturbation) return state;
  const Perturbation p = *spec.perturbation;
  const LatLonGrid& g = *grid;
  for (int i = 0; i < g.n_psi; ++i) {
    const double prof = profile_value(p.profile, g.psi_nodes[i]);
    for (int j = 0; j < g.n_theta; ++j) {
      const double bump = p.amplitude * std::cos(p.theta_mode * g.theta_nodes[j]) * prof;
      double& v = state.v(i, j);
      v = p.target == PerturbationTarget::V ? v + bump : v / (1.0 + bump);
    }
  }
  if (!(state.v.min() > 0.0)) throw PositivityLost(state.t, state.v.min());
  return state;
}

SolverConfig solver_config(const ExperimentSpec& spec) {
  SolverConfig config;
  config.cfl_safety = spec.cfl_safety;
  return config;
}

std::vector<double> window_times(const ExperimentSpec& spec, int count) {
  std::vector<double> ts(static_cast<std::size_t>(count));
  for (int l = 0; l < count; ++l) {
    ts[static_cast<std::size_t>(l)] = spec.t_start + (spec.t_end - spec.t_start) * l / (count - 1);
  }
  return ts;
}

/// Evolves `state` to spec.t_end, appending a BoundReport at every observation.
/// `extra` runs after the report with the observed state.
template <class Extra>
EvolveResult evolve_observed(const ExperimentSpec& spec, FlowState state, RunRecord& record,
                             Extra&& extra) {
  const Observer obs = [&](const FlowState& s, std::size_t n) {
    record.rows.push_back(bound_report(s, spec.monitor));
    extra(s, n);
  };
  return evolve(std::move(state), spec.t_end, solver_config(spec), std::span<const Observer>(&obs, 1),
                spec.monitor.cadence);
}

double min_r(const RunRecord& record) {
  double m = kInf;
  for (const BoundReport& r : record.rows) m = std::min(m, r.r_min);
  return m;
}

// verify-closed-form ---------------------------------------------------------

double discrete_qx_sup(const ClosedFormSolution& sol, int n_psi, double t) {
  const FlowState s{t, sample_v(sol, build_grid(n_psi, 1), t)};
  return qx_field(s).max_abs();
}

void run_verify(const ExperimentSpec& spec, RunRecord& record) {
  Recorder rec{record};
  const ClosedFormSolution sol = spec.solution.make();
  const auto ts = window_times(spec, kResidualSamples);

  const auto start = Clock::now();
  double residual = 0.0, qx = 0.0;
  for (double t : ts) {
    for (int k = 0; k < kResidualSamples; ++k) {
      const double psi = -kPi / 2 + kPi * (k + 0.5) / kResidualSamples;
      residual = std::max(residual, std::abs(pde_residual(sol, psi, t)));
      qx = std::max(qx, std::abs(closed_form_Qx(sol, psi, t)));
    }
  }
  const double sample_seconds = seconds_since(start);
  rec.note("residual_sample_seconds", sample_seconds);
  rec.at_most("pde_residual_max", residual, kResidualTol);
  rec.at_most("closed_form_qx_max", qx, kQxTol);

  double area_err = 0.0;
  for (double t : window_times(spec, 5)) area_err = std::max(area_err, closed_form_area(sol, t).relative_error());
  rec.at_most("area_relative_error", area_err, kAreaRelTol);

  if (sol.kind() == SolutionKind::Rosenau) {
    const double mu = sol.mu();
    double worst = 0.0;
    for (double t : {-2.0, -5.0, -10.0}) {
      double sup = 0.0;
      for (int k = 0; k < kProfileSamples; ++k) {
        const double psi = -kPi / 2 + kPi * k / (kProfileSamples - 1);
        sup = std::max(sup, std::abs(eval_v(sol, psi, t) - limit_profile(psi, sol.c0())));
      }
      const double predicted = 2.0 * mu / std::sinh(4.0 * mu * -t);
      rec.note("limit_sup_t" + std::to_string(static_cast<int>(t)), sup);
      worst = std::max(worst, std::abs(sup - predicted));
    }
    rec.at_most("limit_profile_error", worst, kLimitTol);

    std::vector<int> grids{spec.n_psi};
    if (spec.n_psi % 4 == 0 && spec.n_psi / 4 >= 8) grids = {spec.n_psi / 4, spec.n_psi / 2, spec.n_psi};
    std::vector<double> sups;
    for (int n : grids) {
      double s = 0.0;
      for (double t : {spec.t_start, spec.t_end}) s = std::max(s, discrete_qx_sup(sol, n, t));
      sups.push_back(s);
      rec.note("discrete_qx_sup_n" + std::to_string(n), s);
    }
    rec.at_most("discrete_qx_sup", sups.back(), kDiscreteQxTol);
    for (std::size_t k = 1; k < sups.size(); ++k) {
      rec.within("discrete_qx_ratio_" + std::to_string(grids[k - 1]) + "_" + std::to_string(grids[k]),
                 sups[k - 1] / sups[k], kRatioLo, kRatioHi);
    }
  } else {
    rec.at_most("discrete_qx_sup", discrete_qx_sup(sol, spec.n_psi, spec.t_end), kQxTol);
  }

  const GridPtr grid = build_grid(spec.n_psi, spec.n_theta);
  for (double t : {spec.t_start, spec.t_end}) {
    record.rows.push_back(bound_report(FlowState{t, sample_v(sol, grid, t)}, spec.monitor));
  }
}

// convergence ----------------------------------------------------------------

void run_convergence_sphere(const ExperimentSpec& spec, RunRecord& record) {
  Recorder rec{record};
  double spread = 0.0, track = 0.0;
  const auto result = evolve_observed(spec, initial_state(spec, spec.n_psi, spec.n_theta), record,
                                      [&](const FlowState& s, std::size_t) {
                                        spread = std::max(spread, s.v.max() - s.v.min());
                                        track = std::max(track, std::abs(s.v.max() - 0.5 / -s.t));
                                        track = std::max(track, std::abs(s.v.min() - 0.5 / -s.t));
                                      });
  rec.note("steps", static_cast<double>(result.steps));
  rec.at_most("spatial_spread_max", spread, kSpreadTol);
  rec.at_most("sphere_tracking_error", track, kSphereTrackTol);
  rec.above("r_min", min_r(record), 0.0);
}

void run_convergence(const ExperimentSpec& spec, RunRecord& record) {
  if (spec.solution.kind == SolutionKind::ContractingSphere) return run_convergence_sphere(spec, record);
  Recorder rec{record};
  const ClosedFormSolution sol = spec.solution.make();
  const std::vector<int> grids{spec.n_psi / 4, spec.n_psi / 2, spec.n_psi};
  std::vector<double> errors;
  const auto start = Clock::now();
  for (int n : grids) {
    const bool finest = n == grids.back();
    FlowState init = initial_state(spec, n, spec.n_theta);
    EvolveResult result;
    if (finest) {
      FlowState prev;
      bool have_prev = false;
      double harnack = kInf, monotone = kInf;
      result = evolve_observed(spec, std::move(init), record, [&](const FlowState& s, std::size_t) {
        if (have_prev && s.t > prev.t) {
          harnack = std::min(harnack, harnack_rate(prev, s));
          double dv = kInf;
          for (std::size_t k = 0; k < s.v.size(); ++k) dv = std::min(dv, s.v[k] - prev.v[k]);
          monotone = std::min(monotone, dv);
        }
        prev = s;
        have_prev = true;
      });
      // Per-step tolerance scaled by the steps between observations.
      const double steps_per_obs = static_cast<double>(std::max<std::size_t>(spec.monitor.cadence, 1));
      rec.at_least("harnack_rate_min", harnack, kHarnackTol);
      rec.at_least("v_increment_min", monotone, -kMonotoneStepTol * steps_per_obs);
    } else {
      result = evolve(std::move(init), spec.t_end, solver_config(spec));
    }
    const ScalarField exact = sample_v(sol, result.state.v.grid_ptr(), spec.t_end);
    errors.push_back(max_abs_difference(result.state.v, exact));
    rec.note("sup_error_n" + std::to_string(n), errors.back());
    rec.note("steps_n" + std::to_string(n), static_cast<double>(result.steps));
  }
  rec.note("evolve_seconds", seconds_since(start));
  for (std::size_t k = 1; k < errors.size(); ++k) {
    rec.within("error_ratio_" + std::to_string(grids[k - 1]) + "_" + std::to_string(grids[k]),
               errors[k - 1] / errors[k], kRatioLo, kRatioHi);
  }
  rec.at_most("sup_error_finest", errors.back(), kConvergenceTol);
  rec.above("r_min", min_r(record), 0.0);
}

// area-law -------------------------------------------------------------------

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

void run_area_law(const ExperimentSpec& spec, RunRecord& record) {
  Recorder rec{record};
  const ClosedFormSolution sol = spec.solution.make();
  double area_err = 0.0;
  for (double t : window_times(spec, 5)) area_err = std::max(area_err, closed_form_area(sol, t).relative_error());
  rec.at_most("closed_form_area_relative_error", area_err, kAreaRelTol);

  const auto result = evolve_observed(spec, initial_state(spec, spec.n_psi, spec.n_theta), record,
                                      [](const FlowState&, std::size_t) {});
  std::vector<double> ts, areas;
  for (const BoundReport& r : record.rows) {
    ts.push_back(r.t);
    areas.push_back(r.area);
  }
  rec.note("steps", static_cast<double>(result.steps));
  if (ts.size() < 2) throw DomainError("area-law needs at least two observations");
  const double slope = least_squares_slope(ts, areas);
  rec.note("area_slope", slope);
  rec.at_most("area_slope_relative_error", std::abs(slope / (-8.0 * kPi) - 1.0), kSlopeRelTol);
  rec.above("r_min", min_r(record), 0.0);
}

// contraction ----------------------------------------------------------------

void run_contraction(const ExperimentSpec& spec, RunRecord& record) {
  Recorder rec{record};
  const SolverConfig config = solver_config(spec);
  FlowState a = initial_state(spec, spec.n_psi, spec.n_theta);
  FlowState b{a.t, rotate_theta(a.v, spec.rotation_shift)};

  std::vector<double> distances, areas;
  auto observe = [&]() {
    record.rows.push_back(bound_report(a, spec.monitor));
    distances.push_back(l1_rotation_distance(a, b));
    areas.push_back(record.rows.back().area);
  };

  observe();
  std::size_t n = 0;
  while (a.t < spec.t_end) {
    double dt = std::min(stable_dt(a, config), stable_dt(b, config));
    const bool last = a.t + dt >= spec.t_end;
    if (last) dt = spec.t_end - a.t;
    a = step(a, dt, config);
    b = step(b, dt, config);
    if (last) a.t = b.t = spec.t_end;
    ++n;
    if (last || (spec.monitor.cadence > 0 && n % spec.monitor.cadence == 0)) observe();
  }

  double worst = -kInf;
  for (std::size_t k = 1; k < distances.size(); ++k) {
    worst = std::max(worst, (distances[k] - distances[k - 1]) / areas[k]);
  }
  rec.note("steps", static_cast<double>(n));
  rec.note("l1_initial", distances.front());
  rec.note("l1_final", distances.back());
  rec.at_most("l1_increase_over_area_max", worst, kContractionSlack);
  rec.check("rotation_equivariance_bitwise", rotate_theta(a.v, spec.rotation_shift) == b.v ? 0.0 : 1.0, 0.0,
            rotate_theta(a.v, spec.rotation_shift) == b.v, "== 0");
  if (!spec.perturbation || spec.perturbation->amplitude == 0.0) {
    rec.at_most("l1_distance_max", *std::max_element(distances.begin(), distances.end()), 0.0);
  }
  rec.above("r_min", min_r(record), 0.0);
}

// h-monotonicity -------------------------------------------------------------

void run_h_monotonicity(const ExperimentSpec& spec, RunRecord& record) {
  Recorder rec{record};
  double eq67 = 0.0, band_excess = -kInf;
  const auto result = evolve_observed(spec, initial_state(spec, spec.n_psi, spec.n_theta), record,
                                      [&](const FlowState& s, std::size_t) {
                                        eq67 = std::max(eq67, eq67_pointwise_check(s).max_violation);
                                        const double band = outer_band_h_max(s, kOuterBandFraction);
                                        band_excess = std::max(band_excess, band - h_field(s).max());
                                      });
  double drift = -kInf;
  for (std::size_t k = 1; k < record.rows.size(); ++k) {
    const BoundReport& p = record.rows[k - 1];
    const BoundReport& q = record.rows[k];
    if (q.t > p.t) drift = std::max(drift, (q.h_functional - p.h_functional) / (q.t - p.t));
  }
  rec.note("steps", static_cast<double>(result.steps));
  rec.note("h_functional_initial", record.rows.front().h_functional);
  rec.note("h_functional_final", record.rows.back().h_functional);
  rec.above("h_functional_initial", record.rows.front().h_functional, 0.0);
  rec.at_most("h_functional_rate_max", drift, kHDriftTol);
  rec.at_most("eq67_violation_max", eq67, 0.0);
  rec.at_most("outer_band_excess", band_excess, 0.0);
  rec.above("r_min", min_r(record), 0.0);
}

// bounds-sweep ---------------------------------------------------------------

constexpr double kSweepLadder[] = {-50.0, -20.0, -5.0, -2.0, -1.0};

struct Envelope {
  double lemma1 = 0.0, cor4 = 0.0, cor5 = 0.0, cond62 = 0.0;
};

/// Analytic monitor values of v = (a + b) - b cos²ψ over a midpoint ψ sample.
Envelope analytic_monitors(double a_plus_b, double b, double alpha) {
  Envelope e;
  for (int k = 0; k < kProfileSamples; ++k) {
    const double psi = -kPi / 2 + kPi * (k + 0.5) / kProfileSamples;
    const double s = std::sin(psi), c = std::cos(psi);
    const double v = a_plus_b + (-b) * (c * c);
    const double v1 = 2 * b * s * c, v2 = 2 * b * std::cos(2 * psi), v3 = -8 * b * s * c;
    e.lemma1 = std::max(e.lemma1, std::abs(2 * b * (1 - 3 * s * s)) + v1 * v1 / v);
    e.cor4 = std::max(e.cor4, std::abs(v2) + std::abs(2 * b * s));
    e.cor5 = std::max(e.cor5, std::abs(c * v3));
    e.cond62 = std::max(e.cond62, std::pow(c, 1 - alpha) * std::abs(v3));
  }
  return e;
}

void run_bounds_sweep(const ExperimentSpec& spec, RunRecord& record) {
  Recorder rec{record};
  const ClosedFormSolution sol = spec.solution.make();
  const GridPtr grid = build_grid(spec.n_psi, spec.n_theta);
  const double alpha = spec.monitor.alpha_exponent;
  const bool rosenau = sol.kind() == SolutionKind::Rosenau;

  // Analytic values at each ladder time; `sup` also covers the t -> -inf limit.
  std::vector<Envelope> at_t;
  Envelope sup = rosenau ? analytic_monitors(0.0, -sol.mu(), alpha) : Envelope{};
  for (double t : kSweepLadder) {
    if (t < spec.t_start || t > spec.t_end) continue;
    const double a_plus_b = rosenau ? 2.0 * sol.mu() / std::sinh(4.0 * sol.mu() * -t) : sol.coeff_a(t);
    const Envelope e = analytic_monitors(a_plus_b, sol.coeff_b(t), alpha);
    at_t.push_back(e);
    sup.lemma1 = std::max(sup.lemma1, e.lemma1);
    sup.cor4 = std::max(sup.cor4, e.cor4);
    sup.cor5 = std::max(sup.cor5, e.cor5);
    sup.cond62 = std::max(sup.cond62, e.cond62);
    record.rows.push_back(bound_report(FlowState{t, sample_v(sol, grid, t)}, spec.monitor));
  }
  if (record.rows.empty()) throw DomainError("bounds-sweep: no ladder time inside the time window");

  auto assess = [&](const std::string& name, double Envelope::*analytic, double BoundReport::*field) {
    const double envelope = std::max(analytic ? sup.*analytic : 0.0, kEnvelopeFloor);
    double lo = kInf, hi = -kInf, deviation = 0.0;
    for (std::size_t k = 0; k < record.rows.size(); ++k) {
      const double m = record.rows[k].*field;
      const double exact = analytic ? at_t[k].*analytic : 0.0;
      deviation = std::max(deviation, std::abs(m - exact) / std::max(exact, kEnvelopeFloor));
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    rec.note(name + "_envelope", envelope);
    rec.note(name + "_spread_over_envelope", (hi - lo) / envelope);
    rec.at_most(name + "_deviation_over_analytic", deviation, kEnvelopeVariation);
    rec.at_most(name + "_excess_over_envelope", hi - envelope, kEnvelopeSlack);
  };
  assess("lemma1_sup", &Envelope::lemma1, &BoundReport::lemma1_sup);
  assess("cor4_sup", &Envelope::cor4, &BoundReport::cor4_sup);
  assess("cor5_sup", &Envelope::cor5, &BoundReport::cor5_sup);
  assess("h_sup", nullptr, &BoundReport::h_sup);
  assess("cond62_sup", &Envelope::cond62, &BoundReport::cond62_sup);

  double cond6 = 0.0;
  for (const BoundReport& r : record.rows) cond6 = std::max(cond6, r.cond6_const);
  rec.at_most("cond6_const_max", cond6, 0.0);
  rec.above("r_min", min_r(record), 0.0);
}

}  // namespace

bool RunRecord::passed() const {
  if (!failure.empty() || assertions.empty()) return false;
  return std::all_of(assertions.begin(), assertions.end(), [](const AssertionOutcome& a) { return a.passed; });
}

RunRecord run(const ExperimentSpec& spec) {
  RunRecord record;
  record.spec = spec;
  const auto start = Clock::now();
  try {
    switch (spec.kind) {
      case ExperimentKind::VerifyClosedForm: run_verify(spec, record); break;
      case ExperimentKind::Convergence: run_convergence(spec, record); break;
      case ExperimentKind::Contraction: run_contraction(spec, record); break;
      case ExperimentKind::HMonotonicity: run_h_monotonicity(spec, record); break;
      case ExperimentKind::BoundsSweep: run_bounds_sweep(spec, record); break;
      case ExperimentKind::AreaLaw: run_area_law(spec, record); break;
    }
  } catch (const Error& e) {
    record.failure = e.what();
    record.assertions.push_back({"completed", 0.0, 1.0, false, e.what()});
  }
  record.wall_seconds = seconds_since(start);
  return record;
}

}  // namespace ancientflow
