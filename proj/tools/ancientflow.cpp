#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ancientflow/errors.hpp"
#include "ancientflow/experiment.hpp"
#include "ancientflow/kernels.hpp"

namespace af = ancientflow;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

int run_sections(const std::string& config_path, const std::string& out_dir,
                 std::optional<af::ExperimentKind> only) {
  std::vector<af::ExperimentSpec> specs;
  try {
    specs = af::parse_config_file(config_path);
  } catch (const af::MalformedConfig& e) {
    std::cerr << config_path << ":" << e.line() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const af::InvalidValue& e) {
    std::cerr << config_path << ": invalid " << e.field() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const af::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  std::size_t ran = 0, failed = 0;
  for (const af::ExperimentSpec& spec : specs) {
    if (only && spec.kind != *only) continue;
    ++ran;
    const af::RunRecord record = af::run(spec);
    std::filesystem::path csv = spec.output_path;
    if (!out_dir.empty() && csv.is_relative()) csv = std::filesystem::path(out_dir) / csv;
    try {
      af::emit_csv(record, csv.string());
    } catch (const af::IoError& e) {
      std::cerr << e.path() << ": " << e.what() << "\n";
      ++failed;
    }
    std::cout << af::emit_summary(record) << "  csv: " << csv.string() << "\n" << std::flush;
    if (!record.passed()) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no matching experiment sections in " << config_path << "\n";
    return kExitUsage;
  }
  std::cout << (failed == 0 ? "ALL PASS" : "FAILURES") << ": " << ran - failed << "/" << ran
            << " experiments passed (kernels: " << af::kernels::active().name << ")\n";
  return failed == 0 ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ancient Ricci flow on the 2-sphere: experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int exit_code = 0;

  auto add = [&](const std::string& name, std::optional<af::ExperimentKind> kind, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "directory for CSV output");
    sub->callback([&, kind]() { exit_code = run_sections(config_path, out_dir, kind); });
  };
  for (af::ExperimentKind k : {af::ExperimentKind::VerifyClosedForm, af::ExperimentKind::Convergence,
                               af::ExperimentKind::Contraction, af::ExperimentKind::HMonotonicity,
                               af::ExperimentKind::BoundsSweep, af::ExperimentKind::AreaLaw}) {
    add(std::string(af::to_string(k)), k, "run every [experiment.*] section of this kind");
  }
  add("all", std::nullopt, "run every section");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  return exit_code;
}
