#include <doctest.h>

#include <cmath>
#include <string>

#include "sasaki/pipeline.hpp"
#include "sasaki/report.hpp"

using namespace sasaki;

namespace {

RunConfig small_config(std::vector<std::string> suites) {
  RunConfig c;
  c.models = {"sphere"};
  c.sample_count = 2;
  c.suites = std::move(suites);
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("an empty suite list gives a header-only report") {
  const VerificationReport report = run(small_config({}));
  CHECK(report.suites.empty());
  CHECK(report.pass());
  const std::string json = render_json(report);
  CHECK(json.find("\"schema_version\"") != std::string::npos);
  CHECK(parse_json(json) == report);
}

TEST_CASE("JSON round trip preserves every field") {
  const VerificationReport report = run(small_config({"structure", "cs"}));
  REQUIRE(report.suites.size() == 2);
  CHECK(report.suites[1].integrands.size() == 2);
  const VerificationReport back = parse_json(render_json(report));
  CHECK(back == report);
  CHECK(render_json(back) == render_json(report));
}

TEST_CASE("hand-built records with optional fields survive the round trip") {
  VerificationReport report;
  report.config = small_config({"lemmas"});
  report.config.tolerances["cs.leading"] = 1e-6;
  SuiteReport suite;
  suite.suite = "lemmas";
  suite.model = "sphere";
  CheckRecord a = make_check("x.one", "a = b", 1e-12, 2.0, 1e-9);
  a.rho = 0.5;
  a.values["C"] = -24.0;
  CheckRecord b = make_nonzero_check("x.two", "a != 0", 0.0, 1e-6);
  b.control = true;
  b.note = "quote \" and backslash \\";
  suite.records = {a, b};
  suite.notes = {"n"};
  suite.seconds = 1.25;
  report.suites.push_back(suite);
  CHECK(parse_json(render_json(report)) == report);
  CHECK(suite.gating_failures() == 0);
}

TEST_CASE("markdown summarizes the leading coefficient ratio") {
  const VerificationReport report = run(small_config({"cs"}));
  const std::string md = render_markdown(report);
  CHECK(md.find("| expected magnitude 4^k (4k+2) of a_4k / volume | 24 |") != std::string::npos);
  CHECK(render(report, ReportFormat::markdown) == md);
}

TEST_CASE("reports are deterministic and omit timing unless asked") {
  const RunConfig config = small_config({"structure", "curvature"});
  const std::string first = render_json(run(config));
  const std::string second = render_json(run(config));
  CHECK(first == second);
  CHECK(first.find("\"seconds\"") == std::string::npos);
  RunConfig timed = config;
  timed.timing = true;
  const VerificationReport t = run(timed);
  REQUIRE_FALSE(t.suites.empty());
  CHECK(t.suites.front().seconds.has_value());
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS(parse_json("{"));
  CHECK_THROWS(parse_json("{\"schema_version\": 99}"));
}
