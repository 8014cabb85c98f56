#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ancientflow/errors.hpp"
#include "ancientflow/experiment.hpp"

namespace ancientflow {
namespace {

constexpr std::string_view kSectionPrefix = "experiment.";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  const auto pos = line.find_first_of("#;");
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view field, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidValue(std::string(field), "not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

long long to_integer(std::string_view field, std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidValue(std::string(field), "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

/// Splits `k=v k=v` lists; every key must be in `allowed` and appear once.
std::map<std::string, std::string_view> key_values(std::string_view field, std::string_view text,
                                                   std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string_view> out;
  for (std::string_view tok : tokens(text)) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == tok.size()) {
      throw InvalidValue(std::string(field), "expected key=value, got '" + std::string(tok) + "'");
    }
    const std::string key(tok.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidValue(std::string(field), "unknown entry '" + key + "'");
    }
    if (!out.emplace(key, tok.substr(eq + 1)).second) {
      throw InvalidValue(std::string(field), "duplicate entry '" + key + "'");
    }
  }
  return out;
}

void set_grid(ExperimentSpec& spec, std::string_view value) {
  const auto t = tokens(value);
  if (t.size() != 2) throw InvalidValue("grid", "expected 'n_psi n_theta'");
  const long long n_psi = to_integer("grid", t[0]);
  const long long n_theta = to_integer("grid", t[1]);
  if (n_psi < 8 || n_psi > (1 << 20)) throw InvalidValue("grid", "n_psi must lie in [8, 2^20]");
  if (n_theta != 1 && (n_theta < 8 || n_theta % 2 != 0 || n_theta > (1 << 16))) {
    throw InvalidValue("grid", "n_theta must be 1 or an even integer >= 8");
  }
  spec.n_psi = static_cast<int>(n_psi);
  spec.n_theta = static_cast<int>(n_theta);
}

void set_window(ExperimentSpec& spec, std::string_view value) {
  const auto t = tokens(value);
  if (t.size() != 2) throw InvalidValue("time_window", "expected 't_start t_end'");
  spec.t_start = to_double("time_window", t[0]);
  spec.t_end = to_double("time_window", t[1]);
}

void set_solution(ExperimentSpec& spec, std::string_view value) {
  const auto t = tokens(value);
  if (t.empty()) throw InvalidValue("solution", "empty value");
  if (t[0] == "contracting-sphere") {
    if (t.size() != 1) throw InvalidValue("solution", "contracting-sphere takes no parameters");
    spec.solution = {SolutionKind::ContractingSphere, 0.0};
    return;
  }
  if (t[0] != "rosenau") throw InvalidValue("solution", "unknown solution '" + std::string(t[0]) + "'");
  if (t.size() > 2) throw InvalidValue("solution", "expected 'rosenau [mu=<value>]'");
  double mu = 1.0;
  if (t.size() == 2) {
    std::string_view arg = t[1];
    if (arg.starts_with("mu=")) arg.remove_prefix(3);
    mu = to_double("solution", arg);
  }
  if (!(mu > 0.0)) throw InvalidValue("solution", "mu must be positive");
  spec.solution = {SolutionKind::Rosenau, mu};
}

void set_perturbation(ExperimentSpec& spec, std::string_view value) {
  if (trim(value) == "none") {
    spec.perturbation.reset();
    return;
  }
  const auto kv = key_values("perturbation", value, {"amplitude", "theta_mode", "profile", "target"});
  if (!kv.contains("amplitude")) throw InvalidValue("perturbation", "amplitude is required");
  Perturbation p;
  p.amplitude = to_double("perturbation", kv.at("amplitude"));
  if (auto it = kv.find("theta_mode"); it != kv.end()) {
    const long long m = to_integer("perturbation", it->second);
    if (m < 0 || m > 1024) throw InvalidValue("perturbation", "theta_mode must lie in [0, 1024]");
    p.theta_mode = static_cast<int>(m);
  }
  if (auto it = kv.find("profile"); it != kv.end()) {
    if (it->second == "cos2") {
      p.profile = PsiProfile::Cos2;
    } else if (it->second == "cos4") {
      p.profile = PsiProfile::Cos4;
    } else {
      throw InvalidValue("perturbation", "profile must be cos2 or cos4");
    }
  }
  if (auto it = kv.find("target"); it != kv.end()) {
    if (it->second == "v") {
      p.target = PerturbationTarget::V;
    } else if (it->second == "u") {
      p.target = PerturbationTarget::U;
    } else {
      throw InvalidValue("perturbation", "target must be u or v");
    }
  }
  spec.perturbation = p;
}

void set_monitor(ExperimentSpec& spec, std::string_view value) {
  const auto kv = key_values("monitor", value, {"a", "alpha", "cadence"});
  if (auto it = kv.find("a"); it != kv.end()) spec.monitor.a_exponent = to_double("monitor", it->second);
  if (auto it = kv.find("alpha"); it != kv.end()) {
    spec.monitor.alpha_exponent = to_double("monitor", it->second);
  }
  if (auto it = kv.find("cadence"); it != kv.end()) {
    const long long c = to_integer("monitor", it->second);
    if (c < 1) throw InvalidValue("monitor", "cadence must be >= 1");
    spec.monitor.cadence = static_cast<std::size_t>(c);
  }
  try {
    validate(spec.monitor);
  } catch (const DomainError& e) {
    throw InvalidValue("monitor", e.what());
  }
}

/// Smallest initial v over a fine (ψ, cos mθ = ±1) sample.
double initial_min_v(const ExperimentSpec& spec) {
  const ClosedFormSolution sol = spec.solution.make();
  const Perturbation& p = *spec.perturbation;
  double lo = INFINITY;
  constexpr int kSamples = 2001;
  for (int k = 0; k < kSamples; ++k) {
    const double psi = -std::numbers::pi / 2 + std::numbers::pi * (k + 0.5) / kSamples;
    const double c2 = std::cos(psi) * std::cos(psi);
    const double profile = p.profile == PsiProfile::Cos2 ? c2 : c2 * c2;
    const double v = eval_v(sol, psi, spec.t_start);
    for (double sign : {1.0, -1.0}) {
      if (p.theta_mode == 0 && sign < 0) continue;
      const double bump = sign * p.amplitude * profile;
      lo = std::min(lo, p.target == PerturbationTarget::V ? v + bump : v / (1.0 + bump));
      if (p.target == PerturbationTarget::U && !(1.0 + bump > 0.0)) lo = -1.0;
    }
  }
  return lo;
}

void finish(ExperimentSpec& spec) {
  if (!(spec.t_start < spec.t_end && spec.t_end < 0.0)) {
    throw InvalidValue("time_window", "requires t_start < t_end < 0");
  }
  if (spec.output_path.empty()) spec.output_path = spec.name + ".csv";
  if (!(spec.cfl_safety > 0.0 && spec.cfl_safety <= 1.0)) {
    throw InvalidValue("cfl_safety", "must lie in (0, 1]");
  }
  if (spec.kind == ExperimentKind::Convergence && (spec.n_psi % 4 != 0 || spec.n_psi < 32)) {
    throw InvalidValue("grid", "convergence needs n_psi divisible by 4 and >= 32");
  }
  if (spec.kind == ExperimentKind::Convergence && spec.perturbation) {
    throw InvalidValue("perturbation", "convergence compares against the unperturbed closed form");
  }
  if (spec.kind == ExperimentKind::Contraction && spec.n_theta == 1) {
    throw InvalidValue("grid", "contraction needs n_theta > 1");
  }
  if (spec.perturbation) {
    if (spec.n_theta == 1 && spec.perturbation->theta_mode != 0) {
      throw InvalidValue("perturbation", "theta_mode must be 0 on an axisymmetric grid");
    }
    if (!(initial_min_v(spec) > 0.0)) {
      throw InvalidValue("perturbation", "amplitude makes the initial v non-positive");
    }
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::VerifyClosedForm: return "verify-closed-form";
    case ExperimentKind::Convergence: return "convergence";
    case ExperimentKind::Contraction: return "contraction";
    case ExperimentKind::HMonotonicity: return "h-monotonicity";
    case ExperimentKind::BoundsSweep: return "bounds-sweep";
    case ExperimentKind::AreaLaw: return "area-law";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view text) {
  for (ExperimentKind k : {ExperimentKind::VerifyClosedForm, ExperimentKind::Convergence,
                           ExperimentKind::Contraction, ExperimentKind::HMonotonicity,
                           ExperimentKind::BoundsSweep, ExperimentKind::AreaLaw}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

ClosedFormSolution SolutionParams::make() const {
  return kind == SolutionKind::Rosenau ? ClosedFormSolution::rosenau(mu)
                                       : ClosedFormSolution::contracting_sphere();
}

std::vector<ExperimentSpec> parse_config(std::string_view text) {
  std::vector<ExperimentSpec> specs;
  std::set<std::string> names;
  std::set<std::string> seen_keys;
  bool has_kind = false;

  auto close_section = [&]() {
    if (specs.empty()) return;
    if (!has_kind) throw InvalidValue("kind", "section '" + specs.back().name + "' has no kind");
    finish(specs.back());
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw MalformedConfig(line_no, "unterminated section header");
      const std::string_view header = trim(line.substr(1, line.size() - 2));
      if (!header.starts_with(kSectionPrefix) || header.size() == kSectionPrefix.size()) {
        throw MalformedConfig(line_no, "expected [experiment.<name>]");
      }
      std::string name(header.substr(kSectionPrefix.size()));
      if (name.find_first_of(" \t/\\") != std::string::npos) {
        throw MalformedConfig(line_no, "invalid experiment name '" + name + "'");
      }
      if (!names.insert(name).second) throw MalformedConfig(line_no, "duplicate section '" + name + "'");
      close_section();
      specs.emplace_back().name = std::move(name);
      seen_keys.clear();
      has_kind = false;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw MalformedConfig(line_no, "expected key = value");
    if (specs.empty()) throw MalformedConfig(line_no, "key outside of a section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw MalformedConfig(line_no, "empty key");
    if (value.empty()) throw MalformedConfig(line_no, "empty value for '" + key + "'");
    if (!seen_keys.insert(key).second) throw MalformedConfig(line_no, "duplicate key '" + key + "'");

    ExperimentSpec& spec = specs.back();
    if (key == "kind") {
      const auto kind = parse_kind(value);
      if (!kind) throw InvalidValue("kind", "unknown experiment kind '" + std::string(value) + "'");
      spec.kind = *kind;
      has_kind = true;
    } else if (key == "grid") {
      set_grid(spec, value);
    } else if (key == "time_window") {
      set_window(spec, value);
    } else if (key == "solution") {
      set_solution(spec, value);
    } else if (key == "perturbation") {
      set_perturbation(spec, value);
    } else if (key == "monitor") {
      set_monitor(spec, value);
    } else if (key == "output_path") {
      spec.output_path = std::string(value);
    } else if (key == "rotation_shift") {
      spec.rotation_shift = static_cast<int>(to_integer("rotation_shift", value));
    } else if (key == "cfl_safety") {
      spec.cfl_safety = to_double("cfl_safety", value);
    } else {
      throw MalformedConfig(line_no, "unknown key '" + key + "'");
    }
  }
  close_section();
  return specs;
}

std::vector<ExperimentSpec> parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open config");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return parse_config(buffer.str());
}

}  // namespace ancientflow
