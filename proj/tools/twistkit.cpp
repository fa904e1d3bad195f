// twistkit: run verification suites, print tables, render saved reports.
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "twistkit/report.hpp"

namespace {

using namespace twistkit::report;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError {
  std::string message;
};

// "twist_power" -> "TWISTKIT_TOL_TWIST_POWER".
std::string env_name(const std::string& stem) {
  std::string out = "TWISTKIT_";
  for (char c : stem) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError{"cannot write to standard output"};
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) throw IoError{fmt::format("cannot write '{}'", path)};
}

std::string read_input(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError{fmt::format("cannot read '{}'", path)};
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites and tables for Dehn twists on T*S2", "twistkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SuiteConfig config;
  std::string suite;
  std::string kind;
  std::string in_path;
  std::string out_path;
  std::string verify_format = "json";
  std::string table_format = "csv";
  std::string report_format = "md";
  int table_r = 0;

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite and write a report");
  verify->add_option("suite", suite, "maslov, geometry, twist, intersections, floer, surgery or all")->required();
  verify->add_option("--seed", config.seed, "RNG seed")->envname(env_name("seed"))->capture_default_str();
  verify->add_option("--r-max", config.r_max, "Largest twist power r")->envname(env_name("r_max"))->capture_default_str();
  verify->add_option("--maslov-pairs", config.maslov_pairs, "Random path pairs for the index axioms")
      ->envname(env_name("maslov_pairs"))
      ->capture_default_str();
  verify->add_option("--oracle-families", config.oracle_families, "Random curvature families for the oracle")
      ->envname(env_name("oracle_families"))
      ->capture_default_str();
  verify->add_option("--clean-samples", config.clean_samples, "Samples per clean circle")
      ->envname(env_name("clean_samples"))
      ->capture_default_str();
  verify->add_option("--am-samples", config.am_samples, "Samples per lifted sphere")
      ->envname(env_name("am_samples"))
      ->capture_default_str();
  verify->add_flag("--timings", config.timings, "Record runtime_ms per check (breaks byte-stability)")
      ->envname(env_name("timings"));
  const std::vector<std::pair<std::string, double*>> tolerances = {
      {"flow", &config.tol.flow},
      {"symplectic", &config.tol.symplectic},
      {"twist-power", &config.tol.twist_power},
      {"antipodal", &config.tol.antipodal},
      {"isotopy-det", &config.tol.isotopy_det},
      {"table", &config.tol.table},
      {"action", &config.tol.action},
      {"jacobi", &config.tol.jacobi},
      {"lagrangian", &config.tol.lagrangian},
      {"lift", &config.tol.lift},
      {"moment", &config.tol.moment},
      {"graph", &config.tol.graph},
      {"braid", &config.tol.braid},
  };
  for (const auto& [name, field] : tolerances) {
    verify->add_option("--tol-" + name, *field, "Tolerance: " + name)
        ->envname(env_name("tol_" + name))
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  verify->add_option("--out", out_path, "Report path (default: stdout)")->envname(env_name("out"));
  verify->add_option("--format", verify_format, "json or md")->envname(env_name("format"))->capture_default_str();

  CLI::App* table = app.add_subcommand("table", "Print the actions, indices or E1-page table");
  table->add_option("kind", kind, "actions, indices or e1page")->required();
  table->add_option("-r,--r", table_r, "Twist power r >= 1")->envname(env_name("r"))->required();
  table->add_option("--format", table_format, "json, csv or md")->envname(env_name("format"))->capture_default_str();
  table->add_option("--out", out_path, "Output path (default: stdout)")->envname(env_name("out"));

  CLI::App* report = app.add_subcommand("report", "Render a saved JSON report");
  report->add_option("--in", in_path, "Report produced by verify")->required();
  report->add_option("--format", report_format, "md or json")->envname(env_name("format"))->capture_default_str();
  report->add_option("--out", out_path, "Output path (default: stdout)")->envname(env_name("out"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const ReportDocument doc = run_suite(suite, config);
      write_output(out_path, render_report(doc, verify_format));
      return doc.summary().failed == 0 ? 0 : kExitFailure;
    }
    if (table->parsed()) {
      write_output(out_path, emit_table(kind, table_r, table_format));
      return 0;
    }
    const std::string text = read_input(in_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(fmt::format("'{}' is not JSON: {}", in_path, e.what()));
    }
    write_output(out_path, render_report(report_from_json(j), report_format));
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "twistkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "twistkit: " << e.message << "\n";
    return kExitIo;
  }
}
