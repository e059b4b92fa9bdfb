#include <doctest.h>

#include <cmath>
#include <string>

#include "sdeh/catalog.hpp"
#include "sdeh/errors.hpp"
#include "sdeh/harness.hpp"

using namespace sdeh;

namespace {

std::string config_json(const std::string& chart, const std::string& extra) {
  return R"({"chart": ")" + chart + R"(", "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]],
             "resolution": [2, 2, 2, 2], "checks": ["ricci0"])" +
         extra + "}";
}

SuiteConfig canonic_config(std::array<int, 4> resolution) {
  SuiteConfig c;
  c.chart = "canonic";
  c.scan.box = {{{0.9, 1.1}, {0.9, 1.1}, {-0.1, 0.1}, {-0.1, 0.1}}};
  c.scan.resolution = resolution;
  c.checks = {"ricci0", "wminus", "canonic_spectrum", "canonic_kappa"};
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  const SuiteConfig c = parse_config(config_json("flat", R"(, "tolerances": {"ricci0": 1e-9})"), 7);
  CHECK(c.chart == "flat");
  CHECK(c.scan.resolution == std::array<int, 4>{2, 2, 2, 2});
  CHECK(c.scan.seed == 7);
  REQUIRE(c.tolerances.size() == 1);
  CHECK(c.tolerances[0].second == 1e-9);

  CHECK_THROWS_AS(parse_config("{not json", 1), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]", 1), ConfigError);
  CHECK_THROWS_AS(parse_config(config_json("flat", R"(, "colour": 3)"), 1), ConfigError);
  CHECK_THROWS_AS(parse_config(config_json("flat", R"(, "tolerances": {"ricci0": -1})"), 1), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"chart": "flat", "box": [[0, 1]], "checks": ["ricci0"]})", 1), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"chart": "flat", "box": [[0, 1], [0, 1], [0, 1], [1, 0]],
                                   "checks": ["ricci0"]})",
                               1),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"chart": "flat", "box": [[0, 1], [0, 1], [0, 1], [0, 1]],
                                   "resolution": [2, 0, 2, 2], "checks": ["ricci0"]})",
                               1),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"box": [[0, 1], [0, 1], [0, 1], [0, 1]], "checks": ["ricci0"]})", 1),
                  ConfigError);
}

TEST_CASE("unknown charts and checks are configuration errors") {
  CHECK_THROWS_AS(run_suite(parse_config(config_json("taub_nut", ""), 1), 1), ConfigError);
  SuiteConfig c = parse_config(config_json("flat", ""), 1);
  c.checks = {"ricci0", "no_such_check"};
  CHECK_THROWS_AS(run_suite(c, 1), ConfigError);
  c.checks = {"ricci0"};
  c.tolerances = {{"wminus", 1.0}};
  CHECK_THROWS_AS(run_suite(c, 1), ConfigError);
  SuiteConfig lp = parse_config(config_json("lebrun_pedersen", ""), 1);
  lp.checks = {"scalar_error"};
  CHECK_THROWS_AS(run_suite(lp, 1), ConfigError);
}

TEST_CASE("flat smoke config passes with all residuals zero") {
  SuiteConfig c = parse_config(config_json("flat", ""), 1);
  c.checks = {"riemann", "ricci0", "wplus", "wminus", "scalar_error", "invariants"};
  const VerificationReport r = run_suite(c, 1);
  CHECK(exit_code({r}) == 0);
  CHECK(r.evaluations() == 16 * 6);
  for (const auto& rec : r.records) CHECK(rec.value == 0.0);
}

TEST_CASE("canonic config evaluates every grid point") {
  const VerificationReport r = run_suite(canonic_config({5, 5, 3, 3}), 1);
  CHECK(exit_code({r}) == 0);
  CHECK(r.grid_points == 225);
  CHECK(r.out_of_domain == 0);
  CHECK(r.evaluations() == 225 * 4);
}

TEST_CASE("out-of-domain points are skipped and counted") {
  SuiteConfig c = canonic_config({3, 4, 1, 1});
  c.scan.box[1] = {-0.5, 1.0};
  const VerificationReport r = run_suite(c, 1);
  CHECK(r.grid_points == 12);
  CHECK(r.out_of_domain == 6);  // y = -0.5 and y = 0
  CHECK(exit_code({r}) == 0);

  c.scan.box[1] = {-2.0, -1.0};
  const VerificationReport empty = run_suite(c, 1);
  CHECK(empty.out_of_domain == empty.grid_points);
  CHECK(exit_code({empty}) == 2);
}

TEST_CASE("failing tolerances give exit code 1") {
  SuiteConfig c = canonic_config({2, 2, 1, 1});
  c.checks = {"wplus"};
  const VerificationReport r = run_suite(c, 1);
  CHECK_FALSE(r.all_pass());
  CHECK(exit_code({r}) == 1);
  CHECK(r.summary[0].passed == 0);
  CHECK(r.summary[0].worst > 1e-3);
}

TEST_CASE("lower-bound checks pass when the value exceeds the threshold") {
  SuiteConfig c = canonic_config({1, 1, 1, 1});
  c.checks = {"nijenhuis_control", "gau5_control"};
  const VerificationReport r = run_suite(c, 1);
  REQUIRE(r.summary.size() == 2);
  for (const auto& s : r.summary) {
    CHECK(s.lower_bound);
    CHECK(s.passed == 1);
    CHECK(s.worst >= s.tolerance);
  }
  c.tolerances = {{"gau5_control", 1e6}};
  CHECK(exit_code({run_suite(c, 1)}) == 1);
}

TEST_CASE("checks that cannot be evaluated are skipped") {
  SuiteConfig c = canonic_config({2, 1, 1, 1});
  c.chart = "toda";
  c.scan.box = {{{0.1, 0.2}, {0.1, 0.1}, {1.0, 1.0}, {0.0, 0.0}}};
  c.checks = {"ricci0", "canonic_spectrum"};
  const VerificationReport r = run_suite(c, 1);
  CHECK(r.summary[1].skipped == 2);
  CHECK(r.summary[1].evaluated == 0);
  CHECK_FALSE(r.diagnostics.empty());
  CHECK(exit_code({r}) == 0);
}

TEST_CASE("reports are identical across thread counts") {
  SuiteConfig c = canonic_config({3, 3, 2, 2});
  c.checks.push_back("gauge_coframe");
  const std::string one = reports_to_json({run_suite(c, 1)});
  const std::string three = reports_to_json({run_suite(c, 3)});
  const std::string again = reports_to_json({run_suite(c, 1)});
  CHECK(one == three);
  CHECK(one == again);
  CHECK(reports_to_csv({run_suite(c, 1)}) == reports_to_csv({run_suite(c, 4)}));
}

TEST_CASE("sampled points are reproducible from the seed") {
  ScanSpec s;
  s.box = {{{0, 1}, {0, 1}, {0, 1}, {0, 1}}};
  s.samples = 5;
  s.seed = 42;
  const auto a = s.points();
  const auto b = s.points();
  REQUIRE(a.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(a[i] == b[i]);
  s.seed = 43;
  CHECK(s.points()[0] != a[0]);
}

TEST_CASE("output formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(12.0) == "12");
  CHECK(format_number(-71.0 / 72.0) == "-0.98611111111111116");
  const std::string csv = reports_to_csv({});
  CHECK(csv == "x0,x1,x2,x3,check,value\n");
  const std::string fp = convention_fingerprint();
  CHECK(fp.size() == 16);
  CHECK(fp == convention_fingerprint());
  const std::string json = reports_to_json({});
  CHECK(json.find("\"schema_version\": 1") != std::string::npos);
  CHECK(json.find(fp) != std::string::npos);
}

TEST_CASE("domain scanning") {
  ScanSpec spec;
  spec.box = {{{0.8, 1.2}, {0.8, 1.2}, {0.0, 0.0}, {0.0, 0.0}}};
  spec.resolution = {5, 5, 1, 1};

  const DomainReport ref = scan_domain(canonic_chart({0.0, -695.0 / 576.0, 1.0}), spec);
  CHECK(ref.inside > 0);
  REQUIRE(ref.bounds);
  CHECK((*ref.bounds)[0][0] <= 1.0);
  CHECK((*ref.bounds)[0][1] >= 1.0);
  CHECK((*ref.bounds)[1][0] <= 1.0);
  CHECK((*ref.bounds)[1][1] >= 1.0);
  REQUIRE(ref.sample);
  CHECK(canonic_chart({0.0, -695.0 / 576.0, 1.0}).in_domain(*ref.sample));

  const DomainReport other = scan_domain(canonic_chart({0.0, 1.0, 1.0}), spec);
  CHECK(other.inside < other.total);
  CHECK_FALSE(canonic_chart({0.0, 1.0, 1.0}).in_domain(Point(1.0, 1.0, 0.0, 0.0)));

  spec.box[1] = {-2.0, -1.0};
  const DomainReport empty = scan_domain(canonic_chart({0.0, -695.0 / 576.0, 1.0}), spec);
  CHECK(empty.inside == 0);
  CHECK(empty.fraction == 0.0);
  CHECK_FALSE(empty.bounds);
  CHECK_FALSE(empty.sample);
  CHECK(empty.first_violation.value() == "y > 0 violated");
}

TEST_CASE("parameter discovery finds canonic metrics with s != 0") {
  ScanSpec spec;
  spec.box = {{{0.5, 1.5}, {0.5, 1.5}, {0.0, 0.0}, {0.0, 0.0}}};
  spec.resolution = {5, 5, 1, 1};
  const auto found = discover_canonic_parameters({1.0, 2.0}, {-1.0, 0.0, 1.0}, {-1.0, 1.0}, spec);
  REQUIRE_FALSE(found.empty());
  for (const auto& cand : found) {
    CHECK(cand.params.at("s") != 0.0);
    CHECK(cand.domain.inside > 0);
  }
}

TEST_CASE("the default suite passes") {
  std::vector<VerificationReport> reports;
  for (const auto& c : default_suite()) reports.push_back(run_suite(c, 2));
  CHECK(exit_code(reports) == 0);
  for (const auto& r : reports) CHECK(r.evaluations() > 0);
}
