// sasaki-verify: runs the verification suites and writes a JSON or Markdown report.
//
// Exit status: 0 when every gating check passes, 1 when any fails, 2 for usage errors.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sasaki/errors.hpp"
#include "sasaki/parallel.hpp"
#include "sasaki/pipeline.hpp"
#include "sasaki/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::pair<std::string, double> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw sasaki::ConfigError("tolerance override must look like name=value: " + text);
  const std::string name = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size())
    throw sasaki::ConfigError("tolerance value is not a number: " + text);
  return {name, parsed};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Sasakian curvature and Chern-Simons integrand identities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sasaki::artifact_version());

  sasaki::RunConfig config;
  std::string model = "all";
  std::vector<std::string> suites;
  std::vector<double> rho;
  std::vector<std::string> overrides;
  std::string output;
  std::string format = "json";
  bool list_tolerances = false;

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--model", model, "sphere, heisenberg or all")
      ->check(CLI::IsMember({"sphere", "heisenberg", "all"}))
      ->capture_default_str();
  verify->add_option("--k", config.k, "Dimension parameter; the manifold has dimension 4k+1")
      ->capture_default_str();
  verify->add_option("--rho", rho, "Deformation parameters (comma separated)")->delimiter(',');
  verify->add_option("--seed", config.seed, "Seed for sample points")->capture_default_str();
  verify->add_option("--samples", config.sample_count, "Sample points per model")->capture_default_str();
  verify->add_option("--suites", suites, "Subset of structure,curvature,cs,lemmas,diff")
      ->delimiter(',');
  verify->add_option("--tol", overrides, "Tolerance override name=value (repeatable)");
  verify->add_option("--output,-o", output, "Write the report here instead of stdout");
  verify->add_option("--format", format, "json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}))
      ->capture_default_str();
  verify->add_flag("--slow", config.slow, "Allow k >= 2 (long permutation sums)");
  verify->add_flag("--timing", config.timing, "Record wall-clock seconds per suite");
  verify->add_option("--workers", config.workers,
                     std::string("Worker threads; 0 uses ") + sasaki::kWorkerEnvVar +
                         " or the hardware concurrency")
      ->capture_default_str();
  verify->add_flag("--list-tolerances", list_tolerances, "Print tolerance names and exit");

  sasaki::ModelSpec fixture_spec;
  std::string fixture_model = "sphere";
  std::string fixture_output;
  auto* fixture = app.add_subcommand("fixture", "Write the sample points of one model as a fixture");
  fixture->add_option("--model", fixture_model, "sphere or heisenberg")
      ->check(CLI::IsMember({"sphere", "heisenberg"}))
      ->capture_default_str();
  fixture->add_option("--k", fixture_spec.k, "Dimension parameter")->capture_default_str();
  fixture->add_option("--samples", fixture_spec.sample_count, "Number of points")->capture_default_str();
  fixture->add_option("--seed", fixture_spec.seed, "Seed")->capture_default_str();
  fixture->add_option("--output,-o", fixture_output, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (fixture->parsed()) {
    try {
      fixture_spec.kind = sasaki::parse_model(fixture_model);
      sasaki::PointFixture fx{1, fixture_spec, sasaki::sample_points(fixture_spec), {}};
      fx.bounds["sample_radius"] = fixture_spec.kind == sasaki::ModelKind::sphere
                                       ? sasaki::kSphereSampleRadius
                                       : sasaki::kHeisenbergSampleHalfWidth;
      if (fixture_output.empty()) {
        sasaki::write_fixture(std::cout, fx);
      } else {
        std::ofstream out(fixture_output, std::ios::binary);
        if (!out) throw sasaki::ConfigError("cannot write " + fixture_output);
        sasaki::write_fixture(out, fx);
      }
    } catch (const std::invalid_argument& e) {
      std::cerr << "sasaki-verify: " << e.what() << '\n';
      return kExitUsage;
    }
    return kExitPass;
  }

  if (list_tolerances) {
    for (const auto& name : sasaki::tolerance_names()) std::cout << name << '\n';
    return kExitPass;
  }

  try {
    if (model != "all") config.models = {model};
    if (!suites.empty()) config.suites = suites;
    if (!rho.empty()) config.rho_grid = rho;
    config.format = format == "markdown" ? sasaki::ReportFormat::markdown : sasaki::ReportFormat::json;
    for (const auto& text : overrides) {
      auto [name, value] = parse_override(text);
      config.tolerances[name] = value;
    }
    sasaki::validate(config);
  } catch (const sasaki::ConfigError& e) {
    std::cerr << "sasaki-verify: " << e.what() << '\n';
    return kExitUsage;
  }

  sasaki::ProgressFn progress;
  if (config.slow)
    progress = [](const std::string& step) { std::cerr << "[running] " << step << std::endl; };

  sasaki::VerificationReport report;
  try {
    report = sasaki::run(config, progress);
  } catch (const sasaki::ConfigError& e) {
    std::cerr << "sasaki-verify: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string text = sasaki::render(report, config.format);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "sasaki-verify: cannot write " << output << '\n';
      return kExitUsage;
    }
    out << text;
  }
  return report.pass() ? kExitPass : kExitFail;
}
