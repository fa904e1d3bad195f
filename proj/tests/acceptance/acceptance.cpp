// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// budgets pinned below. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unistd.h>
#include <sys/wait.h>

#include "twistkit/report.hpp"

using namespace twistkit::report;

namespace {

// Pinned tolerances; deliberately not taken from the library defaults.
SuiteConfig pinned_config() {
  SuiteConfig c;
  c.seed = 0;
  c.r_max = 6;
  c.maslov_pairs = 50;
  c.oracle_families = 20;
  c.clean_samples = 32;
  c.am_samples = 1500;
  c.timings = false;
  c.tol.flow = 1e-10;
  c.tol.symplectic = 1e-6;
  c.tol.twist_power = 1e-9;
  c.tol.antipodal = 1e-12;
  c.tol.isotopy_det = 1e-3;
  c.tol.table = 1e-9;
  c.tol.action = 1e-8;
  c.tol.jacobi = 1e-4;
  c.tol.lagrangian = 1e-9;
  c.tol.lift = 1e-8;
  c.tol.moment = 1e-8;
  c.tol.graph = 1e-6;
  c.tol.braid = 1e-5;
  return c;
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& note) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAILED ") + note);
  }

  // Runs a registered check and records its status and defect.
  CheckResult check(const std::string& name, const SuiteConfig& config) {
    CheckResult r = run_check(name, config);
    std::string detail = fmt::format("{}={}", name, to_string(r.status));
    if (r.metrics.count("max_defect")) {
      detail += fmt::format(" ({}/{})", format_real(r.metrics.at("max_defect")), format_real(r.metrics.at("tolerance")));
    }
    if (r.status != Status::Pass && !r.witness.is_null()) detail += " witness=" + r.witness.dump();
    require(r.status == Status::Pass, detail);
    return r;
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<void(Verdict&)> run;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::string command = TWISTKIT_CLI_PATH;
  for (const std::string& a : args) command += " '" + a + "'";
  command += " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  const SuiteConfig config = pinned_config();

  const std::vector<Criterion> criteria = {
      {1, "Maslov axioms on random regular pairs", 10.0,
       [&](Verdict& v) {
         const CheckResult r = v.check("maslov.axioms", config);
         if (r.metrics.count("pairs")) v.require(r.metrics.at("pairs") >= 50, "at least 50 pairs");
         if (r.metrics.count("pairs_with_crossings")) {
           v.require(r.metrics.at("pairs_with_crossings") > 0, "some pairs have crossings");
         }
       }},
      {2, "local model pair index and offsets", 1.0, [&](Verdict& v) { v.check("maslov.local-model", config); }},
      {3, "crossing-form index against the conjugate-point oracle", 30.0,
       [&](Verdict& v) {
         const CheckResult r = v.check("maslov.conjugate-oracle", config);
         if (r.metrics.count("families")) v.require(r.metrics.at("families") >= 20, "at least 20 families");
       }},
      {4, "radii, action and index tables for r = 1..6", 30.0,
       [&](Verdict& v) {
         v.check("intersections.radii", config);
         v.check("intersections.action-gaps", config);
         v.check("intersections.indices", config);
         v.check("geometry.morse-index", config);
         v.check("intersections.constant-action", config);
       }},
      {5, "clean-intersection verification and negative control", 60.0,
       [&](Verdict& v) {
         v.check("intersections.clean", config);
         v.check("intersections.negative-control", config);
       }},
      {6, "twist symplecticity, powers, antipodal action, isotopy", 60.0,
       [&](Verdict& v) {
         const CheckResult s = v.check("twist.symplectic", config);
         if (s.metrics.count("evaluated")) v.require(s.metrics.at("evaluated") >= 1000, "1000 samples evaluated");
         v.check("twist.power", config);
         v.check("twist.antipodal", config);
         v.check("twist.isotopy", config);
       }},
      {7, "Floer algebra: E1 pages, survivors, enumeration, ranks, nonvanishing", 120.0,
       [&](Verdict& v) {
         v.check("floer.e1-page", config);
         v.check("floer.survivors", config);
         v.check("floer.enumeration", config);
         v.check("floer.two-level-rank", config);
         v.check("floer.nonvanishing", config);
       }},
      {8, "handles, figure-eight, linking, lift, A_m counts, correction form, graph identity", 180.0,
       [&](Verdict& v) {
         const CheckResult h = v.check("surgery.handle", config);
         if (h.metrics.count("grid_points")) v.require(h.metrics.at("grid_points") >= 1e4, "10^4 handle grid points");
         v.check("surgery.figure-eight", config);
         v.check("surgery.linking", config);
         v.check("surgery.lift", config);
         v.check("surgery.am-counts", config);
         v.check("surgery.correction-moment", config);
         v.check("surgery.correction-form", config);
         v.check("surgery.graph-identity", config);
       }},
      {9, "determinism of `verify all --seed 0`", 600.0,
       [&](Verdict& v) {
         const auto dir = std::filesystem::temp_directory_path() / fmt::format("twistkit-acceptance-{}", ::getpid());
         std::filesystem::create_directories(dir);
         const auto a = dir / "first.json";
         const auto b = dir / "second.json";
         const int code_a = run_cli({"verify", "all", "--seed", "0", "--out", a.string()});
         const int code_b = run_cli({"verify", "all", "--seed", "0", "--out", b.string()});
         v.require(code_a == 0 || code_a == 1, fmt::format("first run exit code {}", code_a));
         v.require(code_a == code_b, fmt::format("exit codes {} and {}", code_a, code_b));
         const std::string first = read_file(a);
         v.require(!first.empty(), fmt::format("report of {} bytes", first.size()));
         v.require(first == read_file(b), "reports byte-identical");
         std::filesystem::remove_all(dir);
       }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, fmt::format("exception: {}", e.what()));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(seconds < c.budget_s, fmt::format("time {:.2f} s < {:.0f} s", seconds, c.budget_s));
    if (!v.pass) ++failures;
    std::cout << fmt::format("criterion {}: {} - {}\n", c.id, v.pass ? "PASS" : "FAIL", c.title);
    for (const std::string& note : v.notes) std::cout << "    " << note << "\n";
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
