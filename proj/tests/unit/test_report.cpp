#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "twistkit/report.hpp"

using namespace twistkit::report;
using std::numbers::pi;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> csv_numbers(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

TEST_CASE("every check points into the anchor registry") {
  std::set<std::string> names;
  for (const CheckSpec& spec : check_registry()) {
    CAPTURE(spec.name);
    CHECK(anchor_registry().count(spec.anchor) == 1);
    CHECK(names.insert(spec.name).second);
    CHECK(spec.name.rfind(spec.suite + ".", 0) == 0);
  }
  for (const auto& [id, text] : anchor_registry()) CHECK_FALSE(text.empty());
}

TEST_CASE("suite names") {
  CHECK_THROWS_AS(run_suite("bogus", SuiteConfig{}), UsageError);
  CHECK_THROWS_AS(run_check("no.such.check", SuiteConfig{}), UsageError);
  SuiteConfig bad;
  bad.r_max = 0;
  CHECK_THROWS_AS(run_suite("floer", bad), UsageError);
}

TEST_CASE("actions table") {
  const std::string csv = emit_table("actions", 2, "csv");
  CHECK(csv.find('\r') == std::string::npos);
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "j,radius,action,index_prime");
  const std::vector<std::vector<double>> expected = {{1, pi, pi * pi / 2, 2}, {2, 3 * pi, 9 * pi * pi / 2, 4}};
  for (int i = 0; i < 2; ++i) {
    const auto got = csv_numbers(rows[i + 1]);
    REQUIRE(got.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - expected[i][k]) < 1e-9 * std::max(1.0, expected[i][k]));
  }
  // 12 significant digits.
  CHECK(rows[1] == "1,3.14159265359,4.93480220054,2");

  const auto json = nlohmann::json::parse(emit_table("actions", 2, "json"));
  CHECK(json.at("rows").size() == 2);
  CHECK(json.at("rows")[1].at("radius").get<double>() == 9.42477796077);
}

TEST_CASE("indices and E1 tables") {
  const auto rows = lines(emit_table("indices", 1, "csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == "1,0.5,2");

  const auto md = lines(emit_table("e1page", 2, "md"));
  REQUIRE(md.size() == 4);  // header, rule, two rows
  CHECK(md[0] == "| | p = 1 | p = 2 |");
  CHECK(md[2] == "| q = p + 1 | ℤ/2 | ℤ/2 |");
  CHECK(md[3] == "| q = p | ℤ/2 | ℤ/2 |");

  const auto cells = lines(emit_table("e1page", 2, "csv"));
  CHECK(cells == std::vector<std::string>{"p,q,dim", "1,1,1", "1,2,1", "2,2,1", "2,3,1"});

  CHECK_THROWS_AS(emit_table("actions", 0, "csv"), UsageError);
  CHECK_THROWS_AS(emit_table("actions", 2, "xml"), UsageError);
  CHECK_THROWS_AS(emit_table("volumes", 2, "csv"), UsageError);
}

TEST_CASE("floer suite report") {
  SuiteConfig config;
  config.r_max = 4;
  const ReportDocument doc = run_suite("floer", config);
  const Summary s = doc.summary();
  CHECK(s.total == static_cast<int>(doc.checks.size()));
  CHECK(s.passed + s.failed + s.inconclusive == s.total);
  CHECK(s.failed == 0);
  bool found = false;
  for (const CheckResult& c : doc.checks) {
    CHECK(c.metrics.count("runtime_ms") == 0);
    if (c.status == Status::Pass) CHECK(c.metrics.at("max_defect") <= c.metrics.at("tolerance"));
    if (c.name == "floer.nonvanishing") {
      found = true;
      for (int r = 1; r <= 4; ++r) CHECK(c.witness.at(std::to_string(r)).get<bool>());
      CHECK_FALSE(c.witness.at("0").get<bool>());
    }
  }
  CHECK(found);

  // Byte-identical reruns and a lossless JSON round trip.
  const std::string first = render_report(doc, "json");
  CHECK(render_report(run_suite("floer", config), "json") == first);
  CHECK(render_report(report_from_json(nlohmann::json::parse(first)), "json") == first);
  CHECK_THROWS_AS(report_from_json(nlohmann::json::object()), UsageError);
  CHECK_THROWS_AS(render_report(doc, "pdf"), UsageError);
}

TEST_CASE("timings are opt-in") {
  SuiteConfig config;
  config.timings = true;
  const CheckResult c = run_check("floer.two-level-rank", config);
  CHECK(c.metrics.count("runtime_ms") == 1);
  CHECK(c.status == Status::Pass);
}

TEST_CASE("seeded suites are reproducible") {
  SuiteConfig a;
  a.seed = 7;
  a.maslov_pairs = 6;
  a.oracle_families = 4;
  const std::string first = render_report(run_suite("maslov", a), "json");
  CHECK(render_report(run_suite("maslov", a), "json") == first);
  CHECK(first.find("\"seed\": 7") != std::string::npos);
}
