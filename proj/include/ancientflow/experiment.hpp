#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ancientflow/closed_forms.hpp"
#include "ancientflow/diagnostics.hpp"

namespace ancientflow {

enum class ExperimentKind {
  VerifyClosedForm,
  Convergence,
  Contraction,
  HMonotonicity,
  BoundsSweep,
  AreaLaw,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view text);

enum class PsiProfile { Cos2, Cos4 };
enum class PerturbationTarget { V, U };

/// target V:  v += amplitude · cos(theta_mode θ) · profile(ψ)
/// target U:  u *= 1 + amplitude · cos(theta_mode θ) · profile(ψ)
struct Perturbation {
  double amplitude = 0.0;
  int theta_mode = 0;
  PsiProfile profile = PsiProfile::Cos2;
  PerturbationTarget target = PerturbationTarget::V;
};

struct SolutionParams {
  SolutionKind kind = SolutionKind::Rosenau;
  double mu = 1.0;
  ClosedFormSolution make() const;
};

struct ExperimentSpec {
  std::string name;
  ExperimentKind kind = ExperimentKind::VerifyClosedForm;
  int n_psi = 256;
  int n_theta = 1;
  double t_start = -5.0;
  double t_end = -0.5;
  SolutionParams solution;
  std::optional<Perturbation> perturbation;
  MonitorConfig monitor;
  std::string output_path;  // defaults to <name>.csv
  int rotation_shift = 9;   // contraction only
  double cfl_safety = 0.2;
};

/// Parses INI-style text: sections `[experiment.<name>]`, `key = value` lines,
/// `#` or `;` comments. Unknown keys and sections are rejected. Throws
/// MalformedConfig (with line number) or InvalidValue (with field name).
std::vector<ExperimentSpec> parse_config(std::string_view text);
std::vector<ExperimentSpec> parse_config_file(const std::string& path);

struct AssertionOutcome {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct RunRecord {
  ExperimentSpec spec;
  std::vector<BoundReport> rows;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<AssertionOutcome> assertions;
  double wall_seconds = 0.0;
  std::string failure;  // set when a module error aborted the run

  bool passed() const;
};

/// Runs one experiment. Module errors are caught and recorded as a failed
/// assertion so partial results survive.
RunRecord run(const ExperimentSpec& spec);

/// CSV with the BoundReport columns, one row per observation, 17 significant digits.
std::string to_csv(const RunRecord& record);
void emit_csv(const RunRecord& record, const std::string& path);
std::vector<BoundReport> parse_csv(std::string_view text);

/// Fixed-format pass/fail table.
std::string emit_summary(const RunRecord& record);

}  // namespace ancientflow
