#pragma once

// Suite execution over coordinate grids, domain scanning and report output.
//
// Config (JSON):
//   {"chart": "canonic", "params": {"s": 0, ...},
//    "box": [[lo, hi], [lo, hi], [lo, hi], [lo, hi]],
//    "resolution": [n0, n1, n2, n3],      // or "samples": N with --seed
//    "anchor": [x0, x1, x2, x3],          // optional
//    "checks": ["ricci0", "wminus", ...],
//    "tolerances": {"ricci0": 1e-9}}      // optional overrides
//
// Report schema version 1: see README.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdeh/chart.hpp"

namespace sdeh {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Tolerance tiers.
inline constexpr double kJetTolerance = 1e-8;
inline constexpr double kStencilTolerance = 1e-5;
inline constexpr double kDoubleStencilTolerance = 1e-4;

struct ScanSpec {
  std::array<std::array<double, 2>, 4> box{};
  std::array<int, 4> resolution{1, 1, 1, 1};
  int samples = 0;  // > 0: random points instead of the grid
  std::uint64_t seed = 1;

  std::vector<Point> points() const;
  void validate() const;
};

struct SuiteConfig {
  std::string chart;
  ParamMap params;
  ScanSpec scan;
  std::optional<Point> anchor;
  std::vector<std::string> checks;
  std::vector<std::pair<std::string, double>> tolerances;
};

struct CheckInfo {
  std::string name;
  double tolerance;
  bool lower_bound;  // pass when value >= tolerance (negative controls)
  std::string description;
};

const std::vector<CheckInfo>& check_registry();

struct PointRecord {
  Point point;
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckSummary {
  std::string check;
  double tolerance = 0.0;
  bool lower_bound = false;
  double worst = 0.0;  // max value, or min for lower-bound checks
  int evaluated = 0;
  int passed = 0;
  int skipped = 0;  // stencil or precondition could not be evaluated
};

struct VerificationReport {
  std::string chart;
  ParamMap params;
  int grid_points = 0;
  int out_of_domain = 0;
  std::optional<double> scale_factor;  // hyperhermitian rescale, when used
  std::vector<PointRecord> records;
  std::vector<CheckSummary> summary;
  std::vector<std::string> diagnostics;

  bool all_pass() const;
  int evaluations() const;
};

SuiteConfig parse_config(const std::string& json_text, std::uint64_t seed);

VerificationReport run_suite(const SuiteConfig& config, int threads);

// 0 all pass, 1 a tolerance failed, 2 nothing could be evaluated.
int exit_code(const std::vector<VerificationReport>& reports);

// Built-in configuration covering every chart of the catalog.
std::vector<SuiteConfig> default_suite();

struct DomainReport {
  int total = 0;
  int inside = 0;
  double fraction = 0.0;
  std::optional<std::array<std::array<double, 2>, 4>> bounds;
  std::optional<Point> sample;  // in-domain grid point with most in-domain neighbours
  std::optional<std::string> first_violation;
};

DomainReport scan_domain(const MetricChart& chart, const ScanSpec& spec);

struct ParameterCandidate {
  ParamMap params;
  DomainReport domain;
};

// Canonic parameter sets (s, a, b) over the given lists, in order, whose
// domain meets the scan box.
std::vector<ParameterCandidate> discover_canonic_parameters(const std::vector<double>& s_values,
                                                            const std::vector<double>& a_values,
                                                            const std::vector<double>& b_values,
                                                            const ScanSpec& spec);

// Hash of the calibrated sign conventions (curvature sign, Hodge star, J on
// 1-forms, Lee form routes).
std::string convention_fingerprint();

// 17 significant digits, deterministic.
std::string format_number(double v);
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
std::string domain_report_to_json(const std::string& chart, const DomainReport& report);

}  // namespace sdeh
