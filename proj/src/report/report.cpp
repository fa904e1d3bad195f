#include "twistkit/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "twistkit/clean.hpp"
#include "twistkit/floer.hpp"

namespace twistkit::report {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "inconclusive") return Status::Inconclusive;
  throw UsageError(fmt::format("unknown status '{}'", s));
}

// Tolerance names paired with their fields, shared by the JSON echo and parse.
template <typename F>
void for_each_tolerance(Tolerances& t, F&& f) {
  f("flow", t.flow);
  f("symplectic", t.symplectic);
  f("twist_power", t.twist_power);
  f("antipodal", t.antipodal);
  f("isotopy_det", t.isotopy_det);
  f("table", t.table);
  f("action", t.action);
  f("jacobi", t.jacobi);
  f("lagrangian", t.lagrangian);
  f("lift", t.lift);
  f("moment", t.moment);
  f("graph", t.graph);
  f("braid", t.braid);
}

// Round-trip through 12 significant digits so JSON tables are bit-stable.
double rounded(double x) { return std::stod(format_real(x)); }

}  // namespace

std::string format_real(double x) {
  if (x == 0.0) return "0";  // no "-0"
  return fmt::format("{:.12g}", x);
}

json to_json(const SuiteConfig& config) {
  json tol = json::object();
  Tolerances t = config.tol;
  for_each_tolerance(t, [&](const char* name, double& v) { tol[name] = v; });
  return {{"seed", config.seed},
          {"r_max", config.r_max},
          {"maslov_pairs", config.maslov_pairs},
          {"oracle_families", config.oracle_families},
          {"clean_samples", config.clean_samples},
          {"am_samples", config.am_samples},
          {"timings", config.timings},
          {"tolerances", tol}};
}

Summary ReportDocument::summary() const {
  Summary s;
  for (const CheckResult& c : checks) {
    ++s.total;
    if (c.status == Status::Pass) ++s.passed;
    if (c.status == Status::Fail) ++s.failed;
    if (c.status == Status::Inconclusive) ++s.inconclusive;
  }
  return s;
}

json to_json(const ReportDocument& doc) {
  json checks = json::array();
  for (const CheckResult& c : doc.checks) {
    json metrics = json::object();
    for (const auto& [k, v] : c.metrics) metrics[k] = v;
    json entry = {{"name", c.name}, {"anchor", c.anchor}, {"status", to_string(c.status)}, {"metrics", metrics}};
    if (!c.witness.is_null()) entry["witness"] = c.witness;
    checks.push_back(entry);
  }
  const Summary s = doc.summary();
  return {{"tool_version", doc.tool_version},
          {"suite", doc.suite},
          {"seed", doc.config.seed},
          {"config", to_json(doc.config)},
          {"checks", checks},
          {"summary", {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"inconclusive", s.inconclusive}}}};
}

ReportDocument report_from_json(const json& j) {
  try {
    ReportDocument doc;
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.suite = j.at("suite").get<std::string>();
    const json& cfg = j.at("config");
    doc.config.seed = cfg.at("seed").get<std::uint64_t>();
    doc.config.r_max = cfg.at("r_max").get<int>();
    doc.config.maslov_pairs = cfg.at("maslov_pairs").get<int>();
    doc.config.oracle_families = cfg.at("oracle_families").get<int>();
    doc.config.clean_samples = cfg.at("clean_samples").get<int>();
    doc.config.am_samples = cfg.at("am_samples").get<int>();
    doc.config.timings = cfg.at("timings").get<bool>();
    for_each_tolerance(doc.config.tol,
                       [&](const char* name, double& v) { v = cfg.at("tolerances").at(name).get<double>(); });
    for (const json& c : j.at("checks")) {
      CheckResult r;
      r.name = c.at("name").get<std::string>();
      r.anchor = c.at("anchor").get<std::string>();
      r.status = status_from_string(c.at("status").get<std::string>());
      for (const auto& [k, v] : c.at("metrics").items()) r.metrics[k] = v.is_null() ? std::nan("") : v.get<double>();
      if (c.contains("witness")) r.witness = c.at("witness");
      doc.checks.push_back(std::move(r));
    }
    return doc;
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("not a report document: {}", e.what()));
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"maslov", "geometry", "twist", "intersections", "floer", "surgery"};
  return names;
}

CheckResult run_check(const CheckSpec& spec, const SuiteConfig& config) {
  CheckResult result;
  result.name = spec.name;
  result.anchor = spec.anchor;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = spec.run(config);
    result.metrics = o.extra;
    result.metrics["max_defect"] = o.max_defect;
    result.metrics["tolerance"] = o.tolerance;
    result.metrics["violations"] = o.violations;
    result.witness = o.witness;
    const bool ok = o.max_defect <= o.tolerance && o.violations == 0;
    result.status = ok ? Status::Pass : Status::Fail;
  } catch (const Error& e) {
    result.status = Status::Inconclusive;
    result.witness = {{"error", e.what()}};
  } catch (const std::exception& e) {
    result.status = Status::Fail;
    result.witness = {{"error", e.what()}};
  }
  if (config.timings) {
    result.metrics["runtime_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

CheckResult run_check(const std::string& name, const SuiteConfig& config) {
  for (const CheckSpec& spec : check_registry()) {
    if (spec.name == name) return run_check(spec, config);
  }
  throw UsageError(fmt::format("unknown check '{}'", name));
}

ReportDocument run_suite(const std::string& suite, const SuiteConfig& config) {
  const auto& names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw UsageError(fmt::format("unknown suite '{}' (expected one of maslov, geometry, twist, intersections, "
                                 "floer, surgery, all)",
                                 suite));
  }
  if (config.r_max < 1) throw UsageError("r_max must be at least 1");
  ReportDocument doc;
  doc.suite = suite;
  doc.config = config;
  for (const CheckSpec& spec : check_registry()) {
    if (suite == "all" || spec.suite == suite) doc.checks.push_back(run_check(spec, config));
  }
  return doc;
}

std::string render_report(const ReportDocument& doc, const std::string& format) {
  if (format == "json") return to_json(doc).dump(2) + "\n";
  if (format != "md") throw UsageError(fmt::format("unknown report format '{}' (expected json or md)", format));
  std::string out = fmt::format("# twistkit {} report: {} (seed {})\n\n", doc.tool_version, doc.suite, doc.config.seed);
  out += "| check | anchor | status | max_defect | tolerance |\n|---|---|---|---|---|\n";
  for (const CheckResult& c : doc.checks) {
    auto metric = [&](const char* key) {
      const auto it = c.metrics.find(key);
      return it == c.metrics.end() ? std::string("-") : format_real(it->second);
    };
    out += fmt::format("| {} | {} | {} | {} | {} |\n", c.name, c.anchor, to_string(c.status), metric("max_defect"),
                       metric("tolerance"));
  }
  const Summary s = doc.summary();
  out += fmt::format("\n{} checks: {} passed, {} failed, {} inconclusive\n", s.total, s.passed, s.failed,
                     s.inconclusive);
  return out;
}

std::string emit_table(const std::string& kind, int r, const std::string& format) {
  if (kind != "actions" && kind != "indices" && kind != "e1page") {
    throw UsageError(fmt::format("unknown table '{}' (expected actions, indices or e1page)", kind));
  }
  if (format != "json" && format != "csv" && format != "md") {
    throw UsageError(fmt::format("unknown table format '{}' (expected json, csv or md)", format));
  }
  if (r < 1) throw UsageError(fmt::format("table needs r >= 1, got {}", r));

  const clean::IntersectionTable table = clean::compute_circles(r);

  if (kind == "e1page") {
    const floer::BigradedPage page = floer::e1_page(table);
    if (format == "json") {
      json cells = json::array();
      for (const auto& [c, d] : page.entries) cells.push_back({{"p", c.first}, {"q", c.second}, {"dim", d}});
      return json{{"kind", kind}, {"r", r}, {"cells", cells}}.dump(2) + "\n";
    }
    if (format == "csv") {
      std::string out = "p,q,dim\n";
      for (const auto& [c, d] : page.entries) out += fmt::format("{},{},{}\n", c.first, c.second, d);
      return out;
    }
    // Columns p = 1..r; rows by the offset q − p, highest first.
    std::set<int> offsets;
    for (const auto& [c, d] : page.entries) offsets.insert(c.second - c.first);
    std::string out = "| |";
    std::string rule = "|---|";
    for (int p = 1; p <= r; ++p) {
      out += fmt::format(" p = {} |", p);
      rule += "---|";
    }
    out += "\n" + rule + "\n";
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) {
      out += *it == 0 ? "| q = p |" : fmt::format("| q = p {} {} |", *it > 0 ? '+' : '-', std::abs(*it));
      for (int p = 1; p <= r; ++p) {
        const int d = page.dim({p, p + *it});
        out += d == 0 ? " 0 |" : d == 1 ? " ℤ/2 |" : fmt::format(" (ℤ/2)^{} |", d);
      }
      out += "\n";
    }
    return out;
  }

  struct Row {
    int j;
    double radius;
    double action;
    double morse_index;
    int index_prime;
  };
  std::vector<Row> rows;
  const auto indices = clean::index_table(table);
  for (std::size_t i = 0; i < table.circles.size(); ++i) {
    const clean::CleanCircle& c = table.circles[i];
    rows.push_back({c.j, c.radius, c.action, indices[i].morse_index.to_double(), indices[i].index_prime});
  }
  const bool actions = kind == "actions";
  if (format == "json") {
    json out = json::array();
    for (const Row& row : rows) {
      json entry = {{"j", row.j}, {"index_prime", row.index_prime}};
      if (actions) {
        entry["radius"] = rounded(row.radius);
        entry["action"] = rounded(row.action);
      } else {
        entry["morse_index"] = row.morse_index;
      }
      out.push_back(entry);
    }
    return json{{"kind", kind}, {"r", r}, {"rows", out}}.dump(2) + "\n";
  }
  const std::string sep = format == "csv" ? "," : " | ";
  const std::string lead = format == "csv" ? "" : "| ";
  const std::string tail = format == "csv" ? "" : " |";
  std::string out = actions ? lead + "j" + sep + "radius" + sep + "action" + sep + "index_prime" + tail + "\n"
                            : lead + "j" + sep + "morse_index" + sep + "index_prime" + tail + "\n";
  if (format == "md") out += actions ? "|---|---|---|---|\n" : "|---|---|---|\n";
  for (const Row& row : rows) {
    out += actions ? fmt::format("{}{}{}{}{}{}{}{}{}\n", lead, row.j, sep, format_real(row.radius), sep,
                                 format_real(row.action), sep, row.index_prime, tail)
                   : fmt::format("{}{}{}{}{}{}{}\n", lead, row.j, sep, format_real(row.morse_index), sep,
                                 row.index_prime, tail);
  }
  return out;
}

}  // namespace twistkit::report
