#include "sdeh/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sdeh/catalog.hpp"
#include "sdeh/curvature.hpp"
#include "sdeh/errors.hpp"
#include "sdeh/forms.hpp"
#include "sdeh/frobenius.hpp"
#include "sdeh/hermitian.hpp"
#include "sdeh/hyperhermitian.hpp"

namespace sdeh {

// ---------------------------------------------------------------------------
// Scan grids

void ScanSpec::validate() const {
  for (int i = 0; i < 4; ++i) {
    if (resolution[i] < 1) throw ConfigError("resolution must be >= 1 on every axis");
    if (!std::isfinite(box[i][0]) || !std::isfinite(box[i][1]) || box[i][0] > box[i][1])
      throw ConfigError("box interval " + std::to_string(i) + " is empty or not finite");
  }
  if (samples < 0) throw ConfigError("samples must be >= 0");
}

std::vector<Point> ScanSpec::points() const {
  validate();
  std::vector<Point> out;
  if (samples > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    out.reserve(samples);
    for (int k = 0; k < samples; ++k) {
      Point p;
      for (int i = 0; i < 4; ++i) p[i] = box[i][0] + unit(rng) * (box[i][1] - box[i][0]);
      out.push_back(p);
    }
    return out;
  }
  auto axis = [&](int i, int k) {
    if (resolution[i] == 1) return 0.5 * (box[i][0] + box[i][1]);
    return box[i][0] + (box[i][1] - box[i][0]) * k / (resolution[i] - 1);
  };
  for (int a = 0; a < resolution[0]; ++a)
    for (int b = 0; b < resolution[1]; ++b)
      for (int c = 0; c < resolution[2]; ++c)
        for (int d = 0; d < resolution[3]; ++d) out.emplace_back(axis(0, a), axis(1, b), axis(2, c), axis(3, d));
  return out;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

struct SuiteContext {
  const MetricChart* chart = nullptr;
  std::unique_ptr<HermitianField> hermitian;
  std::unique_ptr<HyperhermitianField> hyper;
  EndomorphismField rotated;
};

using Evaluator = std::function<double(const SuiteContext&, const Point&)>;

enum class Needs { kNone, kHermitian, kHyper };

struct CheckDef {
  CheckInfo info;
  Needs needs;
  Evaluator eval;
};

double wplus_gap(const CurvaturePackage& pkg) { return wplus_spectrum(pkg).degeneracy_gap; }

std::optional<double> expected_scalar(const MetricChart& chart) {
  if (chart.name == "flat" || chart.name == "gibbons_hawking") return 0.0;
  if (chart.name == "sphere") return 12.0 / (chart.param("r") * chart.param("r"));
  if (chart.name == "hyperbolic") return -12.0 / (chart.param("r") * chart.param("r"));
  if (chart.name == "fubini_study") return 24.0;
  if (chart.name == "canonic" || chart.name == "toda") return chart.param("s");
  return std::nullopt;
}

TodaParams toda_params(const MetricChart& chart) {
  if (chart.name != "toda") throw PreconditionError("check needs the toda chart");
  return {chart.param("s"), chart.param("a"), chart.param("b"), chart.param("c")};
}

const HermitianField& herm(const SuiteContext& ctx) { return *ctx.hermitian; }

double max_over_branches(const SuiteContext& ctx, const Point& p,
                         double PhiIdentities::*member) {
  return std::max(phi_identity_residuals(*ctx.hyper, p, Branch::kPrime).*member,
                  phi_identity_residuals(*ctx.hyper, p, Branch::kSecond).*member);
}

OneFormField branch_field(const SuiteContext& ctx, Branch b) {
  const HyperhermitianField* hf = ctx.hyper.get();
  return [hf, b](const Point& q) { return hf->theta(q, b); };
}

const std::vector<CheckDef>& definitions() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> d;
    auto add = [&](std::string name, double tol, Needs needs, std::string desc, Evaluator ev,
                   bool lower = false) {
      d.push_back({{std::move(name), tol, lower, std::move(desc)}, needs, std::move(ev)});
    };

    add("invariants", kJetTolerance, Needs::kNone,
        "Riemann symmetries, Bianchi, Weyl traces and reassembly (relative)",
        [](const SuiteContext& c, const Point& p) {
          const PackageInvariants inv = check_invariants(curvature_package(*c.chart, p));
          const double scale = std::max(1.0, inv.scale);
          return std::max({inv.antisymmetry, inv.pair_symmetry, inv.first_bianchi, inv.reassembly,
                           inv.wplus_trace, inv.wminus_trace}) /
                 scale;
        });
    add("riemann", kJetTolerance, Needs::kNone, "|R| in an orthonormal frame",
        [](const SuiteContext& c, const Point& p) { return curvature_package(*c.chart, p).curv_op.norm(); });
    add("ricci", kJetTolerance, Needs::kNone, "|Ric|",
        [](const SuiteContext& c, const Point& p) {
          const CurvaturePackage pkg = curvature_package(*c.chart, p);
          return std::sqrt(pkg.ricci0_frame().squaredNorm() + 0.25 * pkg.scalar * pkg.scalar);
        });
    add("ricci0", kJetTolerance, Needs::kNone, "|Ric0|",
        [](const SuiteContext& c, const Point& p) { return curvature_package(*c.chart, p).ric0_norm(); });
    add("wplus", kJetTolerance, Needs::kNone, "|W+|",
        [](const SuiteContext& c, const Point& p) { return curvature_package(*c.chart, p).wplus_norm(); });
    add("wminus", kJetTolerance, Needs::kNone, "|W-|",
        [](const SuiteContext& c, const Point& p) { return curvature_package(*c.chart, p).wminus_norm(); });
    add("half_flat", kJetTolerance, Needs::kNone, "min(|W+|, |W-|)",
        [](const SuiteContext& c, const Point& p) {
          const CurvaturePackage pkg = curvature_package(*c.chart, p);
          return std::min(pkg.wplus_norm(), pkg.wminus_norm());
        });
    add("scalar_error", kJetTolerance, Needs::kNone, "|s - s_expected|",
        [](const SuiteContext& c, const Point& p) {
          return std::abs(curvature_package(*c.chart, p).scalar - *expected_scalar(*c.chart));
        });
    add("degeneracy_gap", 1e-7, Needs::kNone, "relative gap of the double eigenvalue of W+",
        [](const SuiteContext& c, const Point& p) { return wplus_gap(curvature_package(*c.chart, p)); });
    add("canonic_spectrum", kJetTolerance, Needs::kNone, "W+ eigenvalues vs (x^3/6, -x^3/12, -x^3/12)",
        [](const SuiteContext& c, const Point& p) {
          if (c.chart->name != "canonic") throw PreconditionError("check needs the canonic chart");
          const WPlusSpectrum sp = wplus_spectrum(curvature_package(*c.chart, p));
          const double k = p[0] * p[0] * p[0];
          std::array<double, 3> e{k / 6.0, -k / 12.0, -k / 12.0};
          std::sort(e.begin(), e.end(), std::greater<>());
          double r = 0.0;
          for (int i = 0; i < 3; ++i) r = std::max(r, std::abs(sp.eigenvalues[i] - e[i]));
          return r;
        });
    add("canonic_kappa", 1e-6, Needs::kNone, "|3 (W+ F, F) - x^3| / |x^3|",
        [](const SuiteContext& c, const Point& p) {
          if (c.chart->name != "canonic") throw PreconditionError("check needs the canonic chart");
          const double k = p[0] * p[0] * p[0];
          return std::abs(extract_hermitian(curvature_package(*c.chart, p)).kappa - k) / std::abs(k);
        });
    add("hermitian_candidate", 1e-7, Needs::kNone, "min |F -+ F_candidate|",
        [](const SuiteContext& c, const Point& p) {
          if (!c.chart->hermitian_candidate) throw PreconditionError("chart has no Kaehler candidate");
          const CurvaturePackage pkg = curvature_package(*c.chart, p);
          const TwoForm F = extract_hermitian(pkg).F;
          const TwoForm G = c.chart->hermitian_candidate(p);
          return std::sqrt(std::max(0.0, std::min(norm2_sq(F - G, pkg.metric_inv),
                                                  norm2_sq(F + G, pkg.metric_inv))));
        });
    add("gauge_coframe", kJetTolerance, Needs::kNone, "largest adapted coframe structure residual",
        [](const SuiteContext& c, const Point& p) { return gauge_coframe_residuals(*c.chart, p).max(); });
    add("toda_equation", 1e-12, Needs::kNone, "|u_xx + u_yy + (e^u)_zz|",
        [](const SuiteContext& c, const Point& p) { return toda_equation_residual(toda_params(*c.chart), p); });
    add("toda_monopole", 1e-10, Needs::kNone, "monopole equation for omega",
        [](const SuiteContext& c, const Point& p) { return toda_monopole_residual(toda_params(*c.chart), p); });
    add("toda_potential", 1e-12, Needs::kNone, "|w - 6 (z u_z - 2)/s|",
        [](const SuiteContext& c, const Point& p) { return toda_potential_residual(toda_params(*c.chart), p); });

    add("lee_routes", kStencilTolerance, Needs::kHermitian, "|-1/2 J delta F - 1/3 d ln|kappa||",
        [](const SuiteContext& c, const Point& p) { return lee_form(herm(c), p).difference; });
    add("lee_candidate", kStencilTolerance, Needs::kHermitian, "|1/3 d ln|kappa| - theta_candidate|",
        [](const SuiteContext& c, const Point& p) {
          if (!c.chart->lee_candidate) throw PreconditionError("chart has no Lee candidate");
          const OneForm r = lee_form_from_kappa(herm(c), p) - c.chart->lee_candidate(p);
          return std::sqrt(std::max(0.0, inner1(r, r, c.chart->metric_value(p).inverse())));
        });
    add("killing", kStencilTolerance, Needs::kHermitian, "|D_a K_b + D_b K_a| for K = J grad kappa^{-1/3}",
        [](const SuiteContext& c, const Point& p) { return killing_residual(herm(c), p).residual; });
    add("nijenhuis", kStencilTolerance, Needs::kHermitian, "Nijenhuis tensor of J",
        [](const SuiteContext& c, const Point& p) {
          return nijenhuis_norm(*c.chart, [&c](const Point& q) { return herm(c).at(q).J; }, p);
        });
    add("integrable", kStencilTolerance, Needs::kHermitian, "|D_X J - [X ^ theta, J]|",
        [](const SuiteContext& c, const Point& p) {
          return nijenhuis_check(herm(c), p, lee_form_from_kappa(herm(c), p)).integrable;
        });
    add("nijenhuis_control", 1e-2, Needs::kHermitian, "Nijenhuis tensor of a rotated almost-complex structure",
        [](const SuiteContext& c, const Point& p) { return nijenhuis_norm(*c.chart, c.rotated, p); }, true);
    add("kappa_relations", kStencilTolerance, Needs::kHermitian,
        "kappa = s + 6 (delta theta - |theta|^2), eigenvalue formula, d theta+",
        [](const SuiteContext& c, const Point& p) {
          const KappaRelations r = kappa_relations_check(herm(c), p);
          return std::max({std::abs(r.scalar_relation), r.eigenvalue_formula, std::abs(r.dtheta_plus_F),
                           r.dtheta_plus});
        });
    add("gau5_control", 1e-1, Needs::kHermitian, "hyperhermitian Hessian identity on the unscaled metric",
        [](const SuiteContext& c, const Point& p) { return gau5_residual(herm(c), p); }, true);

    add("ew_prime", kStencilTolerance, Needs::kHyper, "Einstein-Weyl residual of theta'",
        [](const SuiteContext& c, const Point& p) {
          return einstein_weyl_residual(c.hyper->chart(), branch_field(c, Branch::kPrime), p);
        });
    add("ew_second", kStencilTolerance, Needs::kHyper, "Einstein-Weyl residual of theta''",
        [](const SuiteContext& c, const Point& p) {
          return einstein_weyl_residual(c.hyper->chart(), branch_field(c, Branch::kSecond), p);
        });
    add("scalar_flat_prime", kStencilTolerance, Needs::kHyper, "|s - 6 (-delta theta' + |theta'|^2)|",
        [](const SuiteContext& c, const Point& p) {
          return scalar_flat_residual(c.hyper->chart(), branch_field(c, Branch::kPrime), p);
        });
    add("scalar_flat_second", kStencilTolerance, Needs::kHyper, "|s - 6 (-delta theta'' + |theta''|^2)|",
        [](const SuiteContext& c, const Point& p) {
          return scalar_flat_residual(c.hyper->chart(), branch_field(c, Branch::kSecond), p);
        });
    add("dtheta_minus_prime", kStencilTolerance, Needs::kHyper, "|(d theta')-|",
        [](const SuiteContext& c, const Point& p) {
          return anti_self_dual_curvature(c.hyper->chart(), branch_field(c, Branch::kPrime), p);
        });
    add("dtheta_minus_second", kStencilTolerance, Needs::kHyper, "|(d theta'')-|",
        [](const SuiteContext& c, const Point& p) {
          return anti_self_dual_curvature(c.hyper->chart(), branch_field(c, Branch::kSecond), p);
        });
    add("gau5", kDoubleStencilTolerance, Needs::kHyper, "Hessian identity for theta_J",
        [](const SuiteContext& c, const Point& p) {
          const HermitianField scaled(c.hyper->chart(), p);
          return gau5_residual(scaled, p);
        });
    add("phi_closure", kDoubleStencilTolerance, Needs::kHyper, "|d theta -+ Phi|, both branches",
        [](const SuiteContext& c, const Point& p) { return max_over_branches(c, p, &PhiIdentities::closure); });
    add("gau2", kDoubleStencilTolerance, Needs::kHyper, "gradient of |theta|^2, both branches",
        [](const SuiteContext& c, const Point& p) { return max_over_branches(c, p, &PhiIdentities::gau2); });
    add("util4", kDoubleStencilTolerance, Needs::kHyper, "|Phi|^2 identity, both branches",
        [](const SuiteContext& c, const Point& p) { return max_over_branches(c, p, &PhiIdentities::util4); });
    add("util6", kDoubleStencilTolerance, Needs::kHyper, "|D Phi|^2 identity, both branches",
        [](const SuiteContext& c, const Point& p) { return max_over_branches(c, p, &PhiIdentities::util6); });
    add("gau1", kDoubleStencilTolerance, Needs::kHyper, "W+ in terms of Phi, both branches",
        [](const SuiteContext& c, const Point& p) { return max_over_branches(c, p, &PhiIdentities::gau1); });
    return d;
  }();
  return defs;
}

const CheckDef& find_check(const std::string& name) {
  for (const auto& d : definitions())
    if (d.info.name == name) return d;
  throw ConfigError("unknown check '" + name + "'");
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const auto& d : definitions()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

// ---------------------------------------------------------------------------
// Config

namespace {

using nlohmann::json;

std::array<double, 2> interval(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("box entries must be [lo, hi] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

SuiteConfig parse_config(const std::string& text, std::uint64_t seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> keys = {"chart", "params", "box", "resolution", "samples",
                                             "anchor", "checks", "tolerances"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");

  SuiteConfig c;
  try {
    if (!j.contains("chart") || !j["chart"].is_string()) throw ConfigError("config needs a chart name");
    c.chart = j["chart"].get<std::string>();
    if (j.contains("params")) {
      for (const auto& [k, v] : j["params"].items()) {
        if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
        c.params[k] = v.get<double>();
      }
    }
    if (!j.contains("box") || !j["box"].is_array() || j["box"].size() != 4)
      throw ConfigError("box must list four intervals");
    for (int i = 0; i < 4; ++i) c.scan.box[i] = interval(j["box"][i]);
    if (j.contains("resolution")) {
      const json& r = j["resolution"];
      if (!r.is_array() || r.size() != 4) throw ConfigError("resolution must list four integers");
      for (int i = 0; i < 4; ++i) {
        if (!r[i].is_number_integer()) throw ConfigError("resolution must list four integers");
        c.scan.resolution[i] = r[i].get<int>();
      }
    }
    if (j.contains("samples")) {
      if (!j["samples"].is_number_integer()) throw ConfigError("samples must be an integer");
      c.scan.samples = j["samples"].get<int>();
    }
    c.scan.seed = seed;
    if (j.contains("anchor")) {
      const json& a = j["anchor"];
      if (!a.is_array() || a.size() != 4) throw ConfigError("anchor must have four coordinates");
      Point p;
      for (int i = 0; i < 4; ++i) p[i] = a[i].get<double>();
      c.anchor = p;
    }
    if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
      throw ConfigError("config needs a non-empty check list");
    for (const auto& ch : j["checks"]) c.checks.push_back(ch.get<std::string>());
    if (j.contains("tolerances")) {
      for (const auto& [k, v] : j["tolerances"].items()) {
        if (!v.is_number() || !(v.get<double>() >= 0.0))
          throw ConfigError("tolerance '" + k + "' must be a non-negative number");
        c.tolerances.emplace_back(k, v.get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.scan.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Suite execution

bool VerificationReport::all_pass() const {
  return std::all_of(summary.begin(), summary.end(),
                     [](const CheckSummary& s) { return s.passed == s.evaluated; });
}

int VerificationReport::evaluations() const { return static_cast<int>(records.size()); }

namespace {

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct PointOutcome {
  bool inside = false;
  std::vector<std::optional<double>> values;  // per check, nullopt when skipped
  std::vector<std::string> skip_reasons;
};

}  // namespace

VerificationReport run_suite(const SuiteConfig& config, int threads) {
  const MetricChart chart = make_chart(config.chart, config.params);
  std::vector<const CheckDef*> checks;
  std::vector<double> tolerances;
  Needs needs = Needs::kNone;
  for (const auto& name : config.checks) {
    const CheckDef& d = find_check(name);
    checks.push_back(&d);
    tolerances.push_back(d.info.tolerance);
    needs = std::max(needs, d.needs);
    if (name == "scalar_error" && !expected_scalar(chart))
      throw ConfigError("no expected scalar curvature for chart '" + chart.name + "'");
  }
  for (const auto& [name, tol] : config.tolerances) {
    const auto it = std::find(config.checks.begin(), config.checks.end(), name);
    if (it == config.checks.end()) throw ConfigError("tolerance given for unselected check '" + name + "'");
    tolerances[it - config.checks.begin()] = tol;
  }

  VerificationReport report;
  report.chart = chart.name;
  report.params = chart.params;
  const std::vector<Point> points = config.scan.points();
  report.grid_points = static_cast<int>(points.size());

  SuiteContext ctx;
  ctx.chart = &chart;
  std::optional<Point> anchor = config.anchor;
  if (!anchor) {
    for (const Point& p : points)
      if (chart.in_domain(p)) {
        anchor = p;
        break;
      }
  }
  bool context_ok = true;
  if (needs != Needs::kNone && anchor) {
    try {
      ctx.hermitian = std::make_unique<HermitianField>(chart, *anchor);
      ctx.rotated = rotated_structure(*ctx.hermitian, *anchor);
      if (needs == Needs::kHyper) {
        ctx.hyper = std::make_unique<HyperhermitianField>(chart, *anchor);
        report.scale_factor = ctx.hyper->scale_factor();
      }
    } catch (const std::runtime_error& e) {
      report.diagnostics.push_back(std::string("anchor setup failed: ") + e.what());
      context_ok = false;
    }
  }

  const int nchecks = static_cast<int>(checks.size());
  std::vector<PointOutcome> outcomes(points.size());
  parallel_for(static_cast<int>(points.size()), threads, [&](int i) {
    PointOutcome& out = outcomes[i];
    out.inside = chart.in_domain(points[i]);
    out.values.assign(nchecks, std::nullopt);
    out.skip_reasons.assign(nchecks, std::string());
    if (!out.inside) return;
    for (int k = 0; k < nchecks; ++k) {
      if (checks[k]->needs != Needs::kNone && !context_ok) {
        out.skip_reasons[k] = "anchor setup failed";
        continue;
      }
      try {
        out.values[k] = checks[k]->eval(ctx, points[i]);
      } catch (const DomainError& e) {
        out.skip_reasons[k] = e.what();
      } catch (const PreconditionError& e) {
        out.skip_reasons[k] = e.what();
      } catch (const SingularMetricError& e) {
        out.skip_reasons[k] = e.what();
      }
    }
  });

  report.summary.resize(nchecks);
  for (int k = 0; k < nchecks; ++k) {
    CheckSummary& s = report.summary[k];
    s.check = checks[k]->info.name;
    s.tolerance = tolerances[k];
    s.lower_bound = checks[k]->info.lower_bound;
    s.worst = s.lower_bound ? std::numeric_limits<double>::infinity() : 0.0;
  }
  std::set<std::string> reasons;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointOutcome& out = outcomes[i];
    if (!out.inside) {
      ++report.out_of_domain;
      continue;
    }
    for (int k = 0; k < nchecks; ++k) {
      CheckSummary& s = report.summary[k];
      if (!out.values[k]) {
        ++s.skipped;
        if (reasons.insert(s.check + ": " + out.skip_reasons[k]).second)
          report.diagnostics.push_back(s.check + " skipped: " + out.skip_reasons[k]);
        continue;
      }
      const double v = *out.values[k];
      const bool pass = s.lower_bound ? v >= s.tolerance : v <= s.tolerance;
      report.records.push_back({points[i], s.check, v, s.tolerance, pass});
      ++s.evaluated;
      if (pass) ++s.passed;
      if (s.lower_bound ? !(v >= s.worst) : !(v <= s.worst)) s.worst = v;
    }
  }
  if (report.records.empty()) report.diagnostics.push_back("no check could be evaluated");
  return report;
}

int exit_code(const std::vector<VerificationReport>& reports) {
  if (reports.empty()) return 2;
  for (const auto& r : reports)
    if (r.evaluations() == 0) return 2;
  for (const auto& r : reports)
    if (!r.all_pass()) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Default suite

namespace {

SuiteConfig make_config(std::string chart, ParamMap params, std::array<std::array<double, 2>, 4> box,
                        std::array<int, 4> resolution, std::vector<std::string> checks) {
  SuiteConfig c;
  c.chart = std::move(chart);
  c.params = std::move(params);
  c.scan.box = box;
  c.scan.resolution = resolution;
  c.checks = std::move(checks);
  return c;
}

}  // namespace

std::vector<SuiteConfig> default_suite() {
  const std::vector<std::string> baseline = {"invariants", "riemann", "ricci0", "wplus", "wminus",
                                             "scalar_error"};
  const std::vector<std::string> space = {"invariants", "ricci0", "wminus", "scalar_error"};
  std::vector<SuiteConfig> s;
  s.push_back(make_config("flat", {}, {{{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}}, {3, 3, 3, 3}, baseline));
  s.push_back(make_config("sphere", {{"r", 1.0}}, {{{-0.6, 0.6}, {-0.6, 0.6}, {-0.6, 0.6}, {-0.6, 0.6}}},
                          {3, 3, 3, 3}, {"invariants", "ricci0", "wplus", "wminus", "scalar_error"}));
  s.push_back(make_config("hyperbolic", {{"r", 1.0}}, {{{-0.4, 0.4}, {-0.4, 0.4}, {-0.4, 0.4}, {-0.4, 0.4}}},
                          {3, 3, 3, 3}, {"invariants", "ricci0", "wplus", "wminus", "scalar_error"}));
  s.push_back(make_config("fubini_study", {}, {{{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}},
                          {3, 3, 3, 3}, {"invariants", "ricci0", "wminus", "scalar_error", "degeneracy_gap",
                                         "hermitian_candidate"}));

  const ParamMap canonic = {{"s", 0.0}, {"a", -695.0 / 576.0}, {"b", 1.0}};
  s.push_back(make_config("canonic", canonic, {{{0.9, 1.1}, {0.9, 1.1}, {-0.1, 0.1}, {-0.1, 0.1}}},
                          {5, 5, 3, 3},
                          {"invariants", "ricci0", "wminus", "scalar_error", "degeneracy_gap",
                           "canonic_spectrum", "canonic_kappa", "hermitian_candidate", "gauge_coframe"}));
  s.push_back(make_config("canonic", canonic, {{{0.95, 1.05}, {0.95, 1.05}, {-0.1, 0.1}, {0.0, 0.0}}},
                          {3, 3, 2, 1},
                          {"lee_routes", "lee_candidate", "killing", "nijenhuis", "integrable",
                           "nijenhuis_control", "kappa_relations", "gau5_control"}));
  s.push_back(make_config("canonic", {{"s", 2.0}, {"a", -1.0}, {"b", 1.0}},
                          {{{1.0, 1.2}, {0.8, 1.0}, {0.2, 0.4}, {0.1, 0.3}}}, {3, 3, 2, 2},
                          {"ricci0", "wminus", "scalar_error", "canonic_spectrum", "canonic_kappa",
                           "gauge_coframe"}));

  const ParamMap toda = {{"s", -6.0}, {"a", 1.0}, {"b", 1.0}, {"c", 1.0}};
  s.push_back(make_config("toda", toda, {{{-0.5, 0.5}, {-0.5, 0.5}, {0.8, 1.6}, {0.0, 1.0}}}, {3, 3, 3, 2},
                          {"toda_equation", "toda_monopole", "toda_potential", "invariants", "ricci0",
                           "wminus", "scalar_error", "degeneracy_gap", "hermitian_candidate"}));
  s.push_back(make_config("toda", toda, {{{-0.2, 0.2}, {0.1, 0.1}, {1.0, 1.4}, {0.5, 0.5}}}, {2, 1, 3, 1},
                          {"lee_routes", "killing", "nijenhuis", "integrable"}));

  s.push_back(make_config("gibbons_hawking", {{"a", 1.0}, {"b", 0.0}},
                          {{{-1, 1}, {-1, 1}, {0.5, 1.5}, {0, 1}}}, {3, 3, 3, 2},
                          {"invariants", "ricci", "wminus", "half_flat"}));
  s.push_back(make_config("gibbons_hawking", {{"a", 0.0}, {"b", 1.0}},
                          {{{-1, 1}, {-1, 1}, {-1, 1}, {0, 1}}}, {2, 2, 2, 2}, {"riemann"}));

  const ParamMap lp = {{"b", 1.0}, {"c", 2.0}};
  const std::array<std::array<double, 2>, 4> lp_box = {{{1.2, 1.8}, {1.0, 1.4}, {0.0, 0.5}, {0.0, 0.5}}};
  s.push_back(make_config("lebrun_pedersen", lp, lp_box, {3, 2, 2, 2},
                          {"invariants", "ricci0", "wminus", "degeneracy_gap", "hermitian_candidate"}));
  s.push_back(make_config("lebrun_pedersen", lp, lp_box, {3, 2, 2, 1},
                          {"lee_routes", "killing", "nijenhuis", "integrable", "nijenhuis_control"}));
  s.push_back(make_config("lebrun_pedersen", lp, lp_box, {3, 2, 1, 1},
                          {"ew_prime", "ew_second", "scalar_flat_prime", "scalar_flat_second",
                           "dtheta_minus_prime", "dtheta_minus_second", "gau5", "phi_closure", "gau2",
                           "util4", "util6", "gau1"}));
  return s;
}

// ---------------------------------------------------------------------------
// Domain scanning

DomainReport scan_domain(const MetricChart& chart, const ScanSpec& spec) {
  spec.validate();
  ScanSpec grid = spec;
  grid.samples = 0;
  const std::vector<Point> points = grid.points();
  const auto& n = grid.resolution;
  auto index = [&](int a, int b, int c, int d) { return ((a * n[1] + b) * n[2] + c) * n[3] + d; };

  DomainReport r;
  r.total = static_cast<int>(points.size());
  std::vector<char> inside(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto why = chart.domain_violation(points[i]);
    inside[i] = !why;
    if (why && !r.first_violation) r.first_violation = *why;
    if (!why) {
      ++r.inside;
      if (!r.bounds) {
        std::array<std::array<double, 2>, 4> b;
        for (int k = 0; k < 4; ++k) b[k] = {points[i][k], points[i][k]};
        r.bounds = b;
      }
      for (int k = 0; k < 4; ++k) {
        (*r.bounds)[k][0] = std::min((*r.bounds)[k][0], points[i][k]);
        (*r.bounds)[k][1] = std::max((*r.bounds)[k][1], points[i][k]);
      }
    }
  }
  r.fraction = r.total ? static_cast<double>(r.inside) / r.total : 0.0;

  int best = -1;
  for (int a = 0; a < n[0]; ++a)
    for (int b = 0; b < n[1]; ++b)
      for (int c = 0; c < n[2]; ++c)
        for (int d = 0; d < n[3]; ++d) {
          const int i = index(a, b, c, d);
          if (!inside[i]) continue;
          int count = 0;
          for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db)
              for (int dc = -1; dc <= 1; ++dc)
                for (int dd = -1; dd <= 1; ++dd) {
                  const int A = a + da, B = b + db, C = c + dc, D = d + dd;
                  if (A < 0 || B < 0 || C < 0 || D < 0 || A >= n[0] || B >= n[1] || C >= n[2] || D >= n[3])
                    continue;
                  count += inside[index(A, B, C, D)];
                }
          if (count > best) {
            best = count;
            r.sample = points[i];
          }
        }
  return r;
}

std::vector<ParameterCandidate> discover_canonic_parameters(const std::vector<double>& s_values,
                                                            const std::vector<double>& a_values,
                                                            const std::vector<double>& b_values,
                                                            const ScanSpec& spec) {
  std::vector<ParameterCandidate> out;
  for (double s : s_values)
    for (double a : a_values)
      for (double b : b_values) {
        const MetricChart chart = canonic_chart({s, a, b});
        DomainReport d = scan_domain(chart, spec);
        if (d.inside > 0) out.push_back({chart.params, std::move(d)});
      }
  return out;
}

// ---------------------------------------------------------------------------
// Convention fingerprint

std::string convention_fingerprint() {
  static const std::string fp = [] {
    auto sign = [](double v) { return v > 0 ? '+' : v < 0 ? '-' : '0'; };
    std::string desc;
    // Curvature sign: the unit sphere has s = +12 and curvature operator +Id.
    const CurvaturePackage sphere = curvature_package(space_form_chart(SpaceForm::kSphere), Point::Zero());
    desc += "s(S4)=";
    desc += sign(sphere.scalar);
    desc += std::to_string(static_cast<int>(std::lround(sphere.scalar)));
    // Hodge star of e0 ^ e1 on the oriented flat frame.
    const TwoForm e01 = wedge(OneForm::Unit(0), OneForm::Unit(1));
    desc += ";*e01.e23=";
    desc += sign(hodge_star2(e01, Matrix4::Identity())(2, 3));
    // J on 1-forms, for the standard J with J e0 = e1.
    Matrix4 J = Matrix4::Zero();
    J(1, 0) = 1;
    J(0, 1) = -1;
    J(3, 2) = 1;
    J(2, 3) = -1;
    desc += ";(Ja)(e1)|a=e0*=";
    desc += sign(apply_j(J, OneForm::Unit(0))[1]);
    desc += ";F(X,Y)=g(JX,Y);";
    // Lee form routes on the reference canonic point agree in sign.
    const MetricChart canonic = canonic_chart({0.0, -695.0 / 576.0, 1.0});
    const Point p(1.0, 1.0, 0.0, 0.0);
    const HermitianField field(canonic, p);
    const LeeForms lee = lee_form(field, p);
    desc += "theta.route=";
    desc += sign(lee.codifferential.dot(lee.from_kappa));
    desc += ";kappa(canonic)=";
    desc += sign(field.kappa(p));

    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : desc) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return std::string(buf);
  }();
  return fp;
}

// ---------------------------------------------------------------------------
// Output

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_point(const Point& p) {
  return "[" + json_number(p[0]) + ", " + json_number(p[1]) + ", " + json_number(p[2]) + ", " +
         json_number(p[3]) + "]";
}

std::string json_params(const ParamMap& params) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : params) {
    out += (first ? "" : ", ") + json_string(k) + ": " + json_number(v);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "{\n  \"schema_version\": " << kReportSchemaVersion << ",\n";
  os << "  \"tool_version\": " << json_string(kToolVersion) << ",\n";
  os << "  \"convention_fingerprint\": " << json_string(convention_fingerprint()) << ",\n";
  os << "  \"exit_code\": " << exit_code(reports) << ",\n";
  os << "  \"reports\": [";
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const VerificationReport& rep = reports[r];
    os << (r ? ",\n" : "\n") << "    {\n";
    os << "      \"chart\": " << json_string(rep.chart) << ",\n";
    os << "      \"params\": " << json_params(rep.params) << ",\n";
    os << "      \"grid_points\": " << rep.grid_points << ",\n";
    os << "      \"out_of_domain\": " << rep.out_of_domain << ",\n";
    os << "      \"scale_factor\": " << (rep.scale_factor ? json_number(*rep.scale_factor) : "null") << ",\n";
    os << "      \"pass\": " << (rep.all_pass() && rep.evaluations() > 0 ? "true" : "false") << ",\n";
    os << "      \"summary\": [";
    for (std::size_t k = 0; k < rep.summary.size(); ++k) {
      const CheckSummary& s = rep.summary[k];
      os << (k ? ",\n" : "\n") << "        {\"check\": " << json_string(s.check)
         << ", \"bound\": " << json_string(s.lower_bound ? "min" : "max")
         << ", \"tolerance\": " << json_number(s.tolerance)
         << ", \"worst\": " << (s.evaluated ? json_number(s.worst) : "null")
         << ", \"evaluated\": " << s.evaluated << ", \"passed\": " << s.passed
         << ", \"skipped\": " << s.skipped << "}";
    }
    os << (rep.summary.empty() ? "],\n" : "\n      ],\n");
    os << "      \"diagnostics\": [";
    for (std::size_t k = 0; k < rep.diagnostics.size(); ++k)
      os << (k ? ", " : "") << json_string(rep.diagnostics[k]);
    os << "],\n";
    os << "      \"records\": [";
    for (std::size_t k = 0; k < rep.records.size(); ++k) {
      const PointRecord& pr = rep.records[k];
      os << (k ? ",\n" : "\n") << "        {\"point\": " << json_point(pr.point)
         << ", \"check\": " << json_string(pr.check) << ", \"value\": " << json_number(pr.value)
         << ", \"tolerance\": " << json_number(pr.tolerance) << ", \"pass\": " << (pr.pass ? "true" : "false")
         << "}";
    }
    os << (rep.records.empty() ? "]\n" : "\n      ]\n") << "    }";
  }
  os << (reports.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return os.str();
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "x0,x1,x2,x3,check,value\n";
  for (const auto& rep : reports)
    for (const auto& pr : rep.records)
      os << format_number(pr.point[0]) << ',' << format_number(pr.point[1]) << ','
         << format_number(pr.point[2]) << ',' << format_number(pr.point[3]) << ',' << pr.check << ','
         << format_number(pr.value) << '\n';
  return os.str();
}

std::string domain_report_to_json(const std::string& chart, const DomainReport& r) {
  std::ostringstream os;
  os << "{\n  \"schema_version\": " << kReportSchemaVersion << ",\n";
  os << "  \"tool_version\": " << json_string(kToolVersion) << ",\n";
  os << "  \"chart\": " << json_string(chart) << ",\n";
  os << "  \"total\": " << r.total << ",\n  \"inside\": " << r.inside << ",\n";
  os << "  \"fraction\": " << json_number(r.fraction) << ",\n";
  os << "  \"bounds\": ";
  if (r.bounds) {
    os << "[";
    for (int k = 0; k < 4; ++k)
      os << (k ? ", " : "") << "[" << json_number((*r.bounds)[k][0]) << ", " << json_number((*r.bounds)[k][1])
         << "]";
    os << "]";
  } else {
    os << "null";
  }
  os << ",\n  \"sample\": " << (r.sample ? json_point(*r.sample) : "null") << ",\n";
  os << "  \"first_violation\": " << (r.first_violation ? json_string(*r.first_violation) : "null") << "\n}\n";
  return os.str();
}

}  // namespace sdeh
