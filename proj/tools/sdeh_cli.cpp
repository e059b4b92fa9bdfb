// Command line front end: verify, scan, frobenius, list-charts.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdeh/catalog.hpp"
#include "sdeh/errors.hpp"
#include "sdeh/frobenius.hpp"
#include "sdeh/harness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sdeh::ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_verify(const std::string& config, const std::string& format, int threads, std::uint64_t seed) {
  std::vector<sdeh::SuiteConfig> configs;
  if (config.empty()) {
    configs = sdeh::default_suite();
  } else {
    configs.push_back(sdeh::parse_config(read_file(config), seed));
  }
  std::vector<sdeh::VerificationReport> reports;
  for (const auto& c : configs) reports.push_back(sdeh::run_suite(c, threads));
  std::cout << (format == "csv" ? sdeh::reports_to_csv(reports) : sdeh::reports_to_json(reports));
  for (const auto& r : reports)
    for (const auto& d : r.diagnostics) std::cerr << r.chart << ": " << d << '\n';
  return sdeh::exit_code(reports);
}

int run_scan(const std::string& config, std::uint64_t seed) {
  if (config.empty()) throw sdeh::ConfigError("scan needs --config");
  nlohmann::json j = nlohmann::json::parse(read_file(config), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw sdeh::ConfigError("malformed config");
  // The scan config shares the suite keys; checks are not needed.
  if (!j.contains("checks")) j["checks"] = {"ricci0"};
  const sdeh::SuiteConfig c = sdeh::parse_config(j.dump(), seed);
  const sdeh::MetricChart chart = sdeh::make_chart(c.chart, c.params);
  const sdeh::DomainReport r = sdeh::scan_domain(chart, c.scan);
  std::cout << sdeh::domain_report_to_json(chart.name, r);
  return r.inside > 0 ? 0 : 2;
}

int run_frobenius(const std::string& config) {
  using nlohmann::json;
  json j = {{"s", 0.0}, {"a", -695.0 / 576.0}, {"b", 1.0}, {"start", {1.0, 1.0}},
            {"paths", {{{1.2, 1.0}, {1.2, 1.5}}, {{1.0, 1.5}, {1.2, 1.5}}}}, {"tolerance", 1e-10}};
  if (!config.empty()) {
    const json user = json::parse(read_file(config), nullptr, false);
    if (user.is_discarded() || !user.is_object()) throw sdeh::ConfigError("malformed config");
    j.update(user);
  }
  sdeh::SolutionConstants c;
  std::vector<std::vector<std::array<double, 2>>> paths;
  sdeh::FrobeniusState start;
  double tol = 1e-10;
  try {
    c = {j["s"].get<double>(), j["a"].get<double>(), j["b"].get<double>()};
    start.x = j["start"][0].get<double>();
    start.y = j["start"][1].get<double>();
    tol = j["tolerance"].get<double>();
    for (const auto& path : j["paths"]) {
      paths.emplace_back();
      for (const auto& v : path) paths.back().push_back({v[0].get<double>(), v[1].get<double>()});
    }
  } catch (const json::exception& e) {
    throw sdeh::ConfigError(std::string("malformed config: ") + e.what());
  }
  const sdeh::PQ pq0 = sdeh::closed_form_pq(c, start.x, start.y);
  start.p = pq0.p;
  start.q2 = pq0.q2;

  std::ostringstream os;
  os << "{\n  \"schema_version\": " << sdeh::kReportSchemaVersion << ",\n";
  os << "  \"tool_version\": \"" << sdeh::kToolVersion << "\",\n  \"paths\": [";
  std::vector<sdeh::FrobeniusState> ends;
  bool ok = true;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto r = sdeh::integrate_frobenius(start, c, paths[i], tol);
    ends.push_back(r.end);
    const sdeh::PQ exact = sdeh::closed_form_pq(c, r.end.x, r.end.y);
    const double err = std::max(std::abs(r.end.p - exact.p), std::abs(r.end.q2 - exact.q2));
    ok = ok && !r.left_domain;
    os << (i ? ",\n" : "\n") << "    {\"end\": [" << sdeh::format_number(r.end.x) << ", "
       << sdeh::format_number(r.end.y) << "], \"p\": " << sdeh::format_number(r.end.p)
       << ", \"q2\": " << sdeh::format_number(r.end.q2) << ", \"closed_form_error\": " << sdeh::format_number(err)
       << ", \"steps\": " << r.steps << ", \"rejected\": " << r.rejected
       << ", \"left_domain\": " << (r.left_domain ? "true" : "false") << "}";
  }
  double spread = 0.0;
  for (const auto& e : ends)
    spread = std::max({spread, std::abs(e.p - ends.front().p), std::abs(e.q2 - ends.front().q2)});
  os << "\n  ],\n  \"endpoint_discrepancy\": " << sdeh::format_number(spread) << "\n}\n";
  std::cout << os.str();
  return ok ? 0 : 1;
}

void list_charts() {
  for (const auto& c : sdeh::chart_registry()) {
    std::cout << c.name << "  " << c.description;
    for (const auto& [k, v] : c.defaults) std::cout << "  " << k << "=" << sdeh::format_number(v);
    std::cout << '\n';
  }
  std::cout << "\nchecks:\n";
  for (const auto& c : sdeh::check_registry())
    std::cout << "  " << c.name << "  (" << (c.lower_bound ? ">= " : "<= ") << sdeh::format_number(c.tolerance)
              << ")  " << c.description << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-dual Einstein Hermitian metric verification"};
  app.require_subcommand(1);
  std::string config;
  std::string format = "json";
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "run a suite config, or the default suite");
  auto* scan = app.add_subcommand("scan", "scan a box for domain points");
  auto* frob = app.add_subcommand("frobenius", "integrate the Frobenius system along paths");
  auto* list = app.add_subcommand("list-charts", "list charts and checks");
  for (auto* sub : {verify, scan, frob}) sub->add_option("--config", config, "JSON config file");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  for (auto* sub : {verify, scan}) sub->add_option("--seed", seed, "seed for sampled points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return run_verify(config, format, threads, seed);
    if (*scan) return run_scan(config, seed);
    if (*frob) return run_frobenius(config);
    if (*list) list_charts();
    return 0;
  } catch (const sdeh::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
