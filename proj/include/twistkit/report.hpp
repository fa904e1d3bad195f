#pragma once

// Verification suites, report documents and the fixed-format tables behind
// the command-line tool.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistkit/errors.hpp"

namespace twistkit::report {

inline constexpr const char* kToolVersion = "0.1.0";

/// Unknown suite, table kind or format. The CLI maps it to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Status { Pass, Fail, Inconclusive };
std::string to_string(Status s);

/// Per-family tolerances; every field has a `--tol-<name>` flag.
struct Tolerances {
  double flow = 1e-10;         // geodesic-flow group law
  double symplectic = 1e-6;    // η-defect of the twist
  double twist_power = 1e-9;   // τ^{2r} against φ₋₁
  double antipodal = 1e-12;    // σ(−1) against the antipodal map
  double isotopy_det = 1e-3;   // minimum |det| along the square isotopy
  double table = 1e-9;         // radii and action gaps
  double action = 1e-8;        // constant-path action against ½·radius²
  double jacobi = 1e-4;        // Jacobi-field realization
  double lagrangian = 1e-9;    // handle and figure-eight ω-defects
  double lift = 1e-8;          // lift endpoint relation
  double moment = 1e-8;        // ∫ rβ(r) dr
  double graph = 1e-6;         // surgery/twist graph identity
  double braid = 1e-5;         // braid-relation ingredients
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  int r_max = 6;
  int maslov_pairs = 50;
  int oracle_families = 20;
  int clean_samples = 32;
  int am_samples = 1500;
  bool timings = false;
  Tolerances tol;
};

nlohmann::json to_json(const SuiteConfig& config);

struct CheckResult {
  std::string name;
  std::string anchor;  // key of anchor_registry()
  Status status = Status::Inconclusive;
  /// Always holds max_defect and tolerance; runtime_ms only with timings.
  std::map<std::string, double> metrics;
  nlohmann::json witness;  // null when absent
};

struct Summary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
};

struct ReportDocument {
  std::string tool_version = kToolVersion;
  std::string suite;
  SuiteConfig config;
  std::vector<CheckResult> checks;

  Summary summary() const;
};

nlohmann::json to_json(const ReportDocument& doc);
/// Inverse of to_json; throws UsageError on schema mismatch.
ReportDocument report_from_json(const nlohmann::json& j);

/// Topic ids and one-line descriptions that every check points into.
const std::map<std::string, std::string>& anchor_registry();

/// Raw outcome of one check before status assignment.
struct Outcome {
  double max_defect = 0.0;
  double tolerance = 0.0;
  int violations = 0;  // failed exact conditions; any makes the check fail
  std::map<std::string, double> extra;
  nlohmann::json witness;
};

struct CheckSpec {
  std::string suite;
  std::string name;
  std::string anchor;
  std::function<Outcome(const SuiteConfig&)> run;
};

/// Every check, in report order.
const std::vector<CheckSpec>& check_registry();

const std::vector<std::string>& suite_names();

/// Runs one registered check. Library errors make the result inconclusive
/// (message in the witness); any other exception is a failure.
CheckResult run_check(const CheckSpec& spec, const SuiteConfig& config);
CheckResult run_check(const std::string& name, const SuiteConfig& config);

/// suite ∈ suite_names() or "all". Throws UsageError otherwise.
ReportDocument run_suite(const std::string& suite, const SuiteConfig& config);

/// Serialized report: sorted-key JSON (indent 2) or a Markdown table.
std::string render_report(const ReportDocument& doc, const std::string& format);

/// kind ∈ {actions, indices, e1page}, format ∈ {json, csv, md}, r ≥ 1.
std::string emit_table(const std::string& kind, int r, const std::string& format);

/// Real formatted with 12 significant digits.
std::string format_real(double x);

}  // namespace twistkit::report
