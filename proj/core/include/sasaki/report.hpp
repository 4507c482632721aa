#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sasaki/check.hpp"

namespace sasaki {

inline constexpr int kReportSchemaVersion = 1;

std::string artifact_version();

enum class ReportFormat { json, markdown };

// Suites in execution order.
inline const std::vector<std::string> kSuiteOrder{"structure", "curvature", "cs", "lemmas", "diff"};

struct RunConfig {
  std::vector<std::string> models{"sphere", "heisenberg"};
  int k = 1;
  std::vector<double> rho_grid{0.0, 0.5, 1.0, 2.0};
  std::uint64_t seed = 42;
  int sample_count = 20;
  std::vector<std::string> suites = kSuiteOrder;
  std::map<std::string, double> tolerances;  // overrides by name
  bool slow = false;
  bool timing = false;  // wall-clock seconds per suite; breaks byte-identical output
  int workers = 0;      // 0: SASAKI_WORKERS or hardware concurrency
  ReportFormat format = ReportFormat::json;

  bool operator==(const RunConfig&) const = default;
};

// Compact view of one pulled-back integrand.
struct IntegrandSummary {
  int point_index = -1;
  std::vector<double> poly;      // coefficients of rho^0, rho^2, ...
  std::vector<double> factored;  // after dividing by (1 + rho^2)^2
  double volume = 0.0;
  double leading = 0.0;
  double ratio = 0.0;  // leading / volume

  bool operator==(const IntegrandSummary&) const = default;
};

struct SuiteReport {
  std::string suite;
  std::string model;
  int k = 1;
  std::vector<CheckRecord> records;
  std::vector<IntegrandSummary> integrands;
  std::vector<std::string> notes;
  std::optional<double> seconds;

  // Number of failed records that are neither controls nor informational.
  int gating_failures() const noexcept;
  // Controls that unexpectedly passed the vanishing test.
  int passing_controls() const noexcept;
  bool pass() const noexcept { return gating_failures() == 0; }

  bool operator==(const SuiteReport&) const = default;
};

struct VerificationReport {
  int schema_version = kReportSchemaVersion;
  std::string version = artifact_version();
  RunConfig config;
  std::vector<SuiteReport> suites;

  bool pass() const noexcept;
  bool operator==(const VerificationReport&) const = default;
};

std::string render_json(const VerificationReport& report);
VerificationReport parse_json(const std::string& text);
std::string render_markdown(const VerificationReport& report);
std::string render(const VerificationReport& report, ReportFormat format);

}  // namespace sasaki
