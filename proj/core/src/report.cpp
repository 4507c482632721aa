#include "sasaki/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "sasaki/errors.hpp"

#ifndef SASAKI_VERSION
#define SASAKI_VERSION "0.0.0"
#endif

namespace sasaki {

std::string artifact_version() { return SASAKI_VERSION; }

int SuiteReport::gating_failures() const noexcept {
  return static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.gating() && !r.pass; }));
}

int SuiteReport::passing_controls() const noexcept {
  return static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.control && r.pass; }));
}

bool VerificationReport::pass() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
}

using nlohmann::json;

namespace {

std::string format_name(ReportFormat f) { return f == ReportFormat::json ? "json" : "markdown"; }

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "markdown") return ReportFormat::markdown;
  throw ConfigError("unknown report format: " + s);
}

json to_json_value(const CheckRecord& r) {
  json j;
  j["id"] = r.id;
  j["statement"] = r.statement;
  j["model"] = r.model;
  j["k"] = r.k;
  j["point_index"] = r.point_index;
  j["point"] = r.point;
  j["rho"] = r.rho ? json(*r.rho) : json(nullptr);
  j["residual"] = r.residual;
  j["scale"] = r.scale;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["control"] = r.control;
  j["informational"] = r.informational;
  j["note"] = r.note;
  j["values"] = r.values;
  return j;
}

CheckRecord record_from_json(const json& j) {
  CheckRecord r;
  r.id = j.at("id").get<std::string>();
  r.statement = j.at("statement").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.k = j.at("k").get<int>();
  r.point_index = j.at("point_index").get<int>();
  r.point = j.at("point").get<std::vector<double>>();
  if (!j.at("rho").is_null()) r.rho = j.at("rho").get<double>();
  r.residual = j.at("residual").get<double>();
  r.scale = j.at("scale").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.control = j.at("control").get<bool>();
  r.informational = j.at("informational").get<bool>();
  r.note = j.at("note").get<std::string>();
  r.values = j.at("values").get<std::map<std::string, double>>();
  return r;
}

json to_json_value(const IntegrandSummary& s) {
  return {{"point_index", s.point_index}, {"poly", s.poly},       {"factored", s.factored},
          {"volume", s.volume},           {"leading", s.leading}, {"ratio", s.ratio}};
}

IntegrandSummary integrand_from_json(const json& j) {
  IntegrandSummary s;
  s.point_index = j.at("point_index").get<int>();
  s.poly = j.at("poly").get<std::vector<double>>();
  s.factored = j.at("factored").get<std::vector<double>>();
  s.volume = j.at("volume").get<double>();
  s.leading = j.at("leading").get<double>();
  s.ratio = j.at("ratio").get<double>();
  return s;
}

json to_json_value(const RunConfig& c) {
  return {{"models", c.models},   {"k", c.k},
          {"rho_grid", c.rho_grid}, {"seed", c.seed},
          {"sample_count", c.sample_count}, {"suites", c.suites},
          {"tolerances", c.tolerances}, {"slow", c.slow},
          {"timing", c.timing},   {"workers", c.workers},
          {"format", format_name(c.format)}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.models = j.at("models").get<std::vector<std::string>>();
  c.k = j.at("k").get<int>();
  c.rho_grid = j.at("rho_grid").get<std::vector<double>>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.sample_count = j.at("sample_count").get<int>();
  c.suites = j.at("suites").get<std::vector<std::string>>();
  c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  c.slow = j.at("slow").get<bool>();
  c.timing = j.at("timing").get<bool>();
  c.workers = j.at("workers").get<int>();
  c.format = parse_format(j.at("format").get<std::string>());
  return c;
}

json to_json_value(const SuiteReport& s) {
  json records = json::array();
  for (const auto& r : s.records) records.push_back(to_json_value(r));
  json integrands = json::array();
  for (const auto& i : s.integrands) integrands.push_back(to_json_value(i));
  json j{{"suite", s.suite},
         {"model", s.model},
         {"k", s.k},
         {"pass", s.pass()},
         {"gating_failures", s.gating_failures()},
         {"records", records},
         {"integrands", integrands},
         {"notes", s.notes}};
  if (s.seconds) j["seconds"] = *s.seconds;
  return j;
}

SuiteReport suite_from_json(const json& j) {
  SuiteReport s;
  s.suite = j.at("suite").get<std::string>();
  s.model = j.at("model").get<std::string>();
  s.k = j.at("k").get<int>();
  for (const auto& r : j.at("records")) s.records.push_back(record_from_json(r));
  for (const auto& i : j.at("integrands")) s.integrands.push_back(integrand_from_json(i));
  s.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("seconds")) s.seconds = j.at("seconds").get<double>();
  return s;
}

std::string fmt(double v, const char* spec = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string render_json(const VerificationReport& report) {
  json suites = json::array();
  for (const auto& s : report.suites) suites.push_back(to_json_value(s));
  const json j{{"schema_version", report.schema_version},
               {"version", report.version},
               {"config", to_json_value(report.config)},
               {"pass", report.pass()},
               {"suites", suites}};
  return j.dump(2) + "\n";
}

VerificationReport parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  VerificationReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion)
    throw ConfigError("unsupported report schema version " + std::to_string(r.schema_version));
  r.version = j.at("version").get<std::string>();
  r.config = config_from_json(j.at("config"));
  for (const auto& s : j.at("suites")) r.suites.push_back(suite_from_json(s));
  return r;
}

std::string render_markdown(const VerificationReport& report) {
  std::ostringstream os;
  const RunConfig& c = report.config;
  os << "# Verification report\n\n";
  os << "- version: " << report.version << " (schema " << report.schema_version << ")\n";
  os << "- k: " << c.k << ", dimension " << 4 * c.k + 1 << "\n";
  os << "- samples: " << c.sample_count << ", seed " << c.seed << "\n";
  os << "- rho grid:";
  for (double r : c.rho_grid) os << ' ' << fmt(r, "%g");
  os << "\n- result: " << (report.pass() ? "PASS" : "FAIL") << "\n";

  for (const auto& s : report.suites) {
    os << "\n## " << s.suite << " / " << s.model << "\n\n";
    for (const auto& n : s.notes) os << "> " << n << "\n\n";
    if (s.records.empty()) continue;
    struct Row {
      std::string statement;
      int runs = 0;
      int failures = 0;
      double worst = 0.0;
      double tolerance = 0.0;
      bool control = false;
      bool informational = false;
    };
    std::vector<std::string> order;
    std::map<std::string, Row> rows;
    for (const auto& r : s.records) {
      auto [it, fresh] = rows.try_emplace(r.id);
      if (fresh) order.push_back(r.id);
      Row& row = it->second;
      row.statement = r.statement;
      row.runs += 1;
      row.failures += r.pass ? 0 : 1;
      row.worst = std::max(row.worst, r.residual);
      row.tolerance = r.tolerance;
      row.control = r.control;
      row.informational = r.informational;
    }
    os << "| check | statement | runs | worst residual | tolerance | status |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& id : order) {
      const Row& row = rows.at(id);
      std::string status;
      if (row.control)
        status = row.failures == row.runs ? "control (nonvanishing)" : "CONTROL PASSED";
      else if (row.informational)
        status = row.failures ? "reference (does not hold)" : "reference";
      else
        status = row.failures ? "FAIL" : "PASS";
      os << "| " << id << " | `" << row.statement << "` | " << row.runs << " | "
         << fmt(row.worst) << " | " << fmt(row.tolerance) << " | " << status << " |\n";
    }
    if (!s.integrands.empty()) {
      const double expected = std::pow(4.0, s.k) * (4 * s.k + 2);
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (const auto& i : s.integrands) {
        lo = std::min(lo, std::abs(i.ratio));
        hi = std::max(hi, std::abs(i.ratio));
      }
      os << "\n| quantity | value |\n|---|---|\n";
      os << "| expected magnitude 4^k (4k+2) of a_4k / volume | " << fmt(expected, "%.10g") << " |\n";
      os << "| observed a_4k / volume magnitude (min) | " << fmt(lo, "%.10g") << " |\n";
      os << "| observed a_4k / volume magnitude (max) | " << fmt(hi, "%.10g") << " |\n";
      os << "| sign of a_4k / volume | " << (s.integrands.front().ratio < 0 ? "-" : "+") << " |\n";
    }
    if (s.seconds) os << "\nwall time: " << fmt(*s.seconds, "%.2f") << " s\n";
  }
  return os.str();
}

std::string render(const VerificationReport& report, ReportFormat format) {
  return format == ReportFormat::json ? render_json(report) : render_markdown(report);
}

}  // namespace sasaki
