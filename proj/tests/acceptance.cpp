// Acceptance criteria 1-11: one PASS/FAIL line each, exit status 0 when all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sdeh/catalog.hpp"
#include "sdeh/curvature.hpp"
#include "sdeh/frobenius.hpp"
#include "sdeh/harness.hpp"
#include "sdeh/hermitian.hpp"
#include "sdeh/hyperhermitian.hpp"
#include "support.hpp"

using namespace sdeh;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a residual against its bound; keeps the worst value per label.
  void bound(const std::string& label, double value, double limit) {
    if (!(value <= limit)) {
      if (pass) detail << "FAILED " << label << " = " << value << " > " << limit << "; ";
      pass = false;
    }
  }
  void require(const std::string& label, bool ok) {
    if (!ok) {
      if (pass) detail << "FAILED " << label << "; ";
      pass = false;
    }
  }
};

struct Worst {
  double value = 0.0;
  void operator()(double v) { value = std::max(value, v); }
};

std::vector<Point> domain_points(const MetricChart& chart, unsigned seed, int n, const Point& lo, const Point& hi) {
  std::vector<Point> out;
  for (const Point& p : testing::random_points(seed, 50 * n, lo, hi)) {
    if (chart.in_domain(p)) out.push_back(p);
    if (static_cast<int>(out.size()) == n) break;
  }
  return out;
}

const CanonicParams kReference{0.0, -695.0 / 576.0, 1.0};

// Criterion 2's residuals at a point of a canonic chart.
void canonic_residuals(Outcome& o, const MetricChart& chart, const Point& p, Worst& ric, Worst& wm, Worst& spec,
                       Worst& kap) {
  const CurvaturePackage pkg = curvature_package(chart, p);
  const WPlusSpectrum sp = wplus_spectrum(pkg);
  const double k = p[0] * p[0] * p[0];
  std::array<double, 3> e{k / 6.0, -k / 12.0, -k / 12.0};
  std::sort(e.begin(), e.end(), std::greater<>());
  double spec_err = 0.0;
  for (int i = 0; i < 3; ++i) spec_err = std::max(spec_err, std::abs(sp.eigenvalues[i] - e[i]));
  const double kappa_err = std::abs(extract_hermitian(pkg).kappa - k) / std::abs(k);
  ric(pkg.ric0_norm());
  wm(pkg.wminus_norm());
  spec(spec_err);
  kap(kappa_err);
  o.bound("|Ric0|", pkg.ric0_norm(), 1e-8);
  o.bound("|W-|", pkg.wminus_norm(), 1e-8);
  o.bound("W+ spectrum", spec_err, 1e-8);
  o.bound("kappa relative", kappa_err, 1e-6);
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const MetricChart flat = space_form_chart(SpaceForm::kFlat);
  const MetricChart sphere = space_form_chart(SpaceForm::kSphere);
  Worst f, s, w, r;
  for (const Point& p : testing::random_points(101, 100, Point::Constant(-2.0), Point::Constant(2.0))) {
    const CurvaturePackage a = curvature_package(flat, p);
    const double parts = std::max({a.curv_op.norm(), a.ric0_norm(), a.wplus_norm(), a.wminus_norm(), std::abs(a.scalar)});
    f(parts);
    o.bound("flat curvature", parts, 1e-10);
    const CurvaturePackage b = curvature_package(sphere, p);
    s(std::abs(b.scalar - 12.0));
    w(std::max(b.wplus_norm(), b.wminus_norm()));
    r(b.ric0_norm());
    o.bound("sphere |s - 12|", std::abs(b.scalar - 12.0), 1e-9);
    o.bound("sphere |W|", std::max(b.wplus_norm(), b.wminus_norm()), 1e-10);
    o.bound("sphere |Ric0|", b.ric0_norm(), 1e-10);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.bound("runtime [s]", secs, 1.0);
  o.detail << "flat max " << f.value << ", sphere |s-12| " << s.value << ", |W| " << w.value << ", |Ric0| "
           << r.value << ", " << secs << " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  SuiteConfig c;
  c.chart = "canonic";
  c.params = {{"s", kReference.s}, {"a", kReference.a}, {"b", kReference.b}};
  c.scan.box = {{{0.9, 1.1}, {0.9, 1.1}, {-0.1, 0.1}, {-0.1, 0.1}}};
  c.scan.resolution = {5, 5, 3, 3};
  c.checks = {"ricci0", "wminus", "canonic_spectrum", "canonic_kappa"};
  const VerificationReport r = run_suite(c, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require("all checks pass", exit_code({r}) == 0);
  o.bound("runtime [s]", secs, 10.0);
  o.detail << (r.grid_points - r.out_of_domain) << " domain points;";
  for (const auto& s : r.summary) o.detail << ' ' << s.check << ' ' << s.worst;
  o.detail << "; " << secs << " s";
  return o;
}

Outcome criterion3() {
  Outcome o;
  ScanSpec spec;
  spec.box = {{{0.5, 1.5}, {0.5, 1.5}, {0.0, 0.0}, {0.0, 0.0}}};
  spec.resolution = {11, 11, 1, 1};
  const auto found = discover_canonic_parameters({1.0, 2.0, -1.0, -2.0, 6.0}, {-2.0, -1.0, 0.0, 1.0, 2.0},
                                                 {-1.0, 0.0, 1.0, 2.0}, spec);
  for (const auto& cand : found) {
    const MetricChart chart = canonic_chart({cand.params.at("s"), cand.params.at("a"), cand.params.at("b")});
    // Interior grid points: in the domain together with all grid neighbours.
    const double hx = 0.1;
    std::vector<Point> interior;
    for (int i = 0; i < 11 && interior.size() < 10; ++i)
      for (int j = 0; j < 11 && interior.size() < 10; ++j) {
        const Point p(0.5 + hx * i, 0.5 + hx * j, 0.1 * static_cast<double>(interior.size()), -0.05 * j);
        bool ok = chart.in_domain(p);
        for (int di = -1; di <= 1 && ok; ++di)
          for (int dj = -1; dj <= 1 && ok; ++dj) ok = chart.in_domain(p + Point(di * hx, dj * hx, 0, 0));
        if (ok) interior.push_back(p);
      }
    if (interior.size() < 10) continue;
    Outcome trial;
    Worst ric, wm, spec_w, kap;
    for (const Point& p : interior) canonic_residuals(trial, chart, p, ric, wm, spec_w, kap);
    if (!trial.pass) continue;
    o.detail << "(s, a, b) = (" << cand.params.at("s") << ", " << cand.params.at("a") << ", " << cand.params.at("b")
             << "), domain fraction " << cand.domain.fraction << ", " << found.size()
             << " candidates; |Ric0| " << ric.value << ", |W-| " << wm.value << ", spectrum " << spec_w.value
             << ", kappa " << kap.value;
    return o;
  }
  o.pass = false;
  o.detail << "no parameter set with s != 0 passed (" << found.size() << " candidates with nonempty domain)";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const FrobeniusState start{1.0, 1.0, 0.0, 551.0 / 576.0};
  const auto a = integrate_frobenius(start, kReference, {{1.2, 1.0}, {1.2, 1.5}});
  const auto b = integrate_frobenius(start, kReference, {{1.0, 1.5}, {1.2, 1.5}});
  const PQ exact = closed_form_pq(kReference, 1.2, 1.5);
  const double disc = std::max(std::abs(a.end.p - b.end.p), std::abs(a.end.q2 - b.end.q2));
  const double err = std::max({std::abs(a.end.p - exact.p), std::abs(a.end.q2 - exact.q2),
                               std::abs(b.end.p - exact.p), std::abs(b.end.q2 - exact.q2)});
  const FrobeniusRhs r = frobenius_rhs(start, kReference);
  const double spot = std::max(std::abs(r.dp_dy - 11.0 / 24.0), std::abs(r.dp_dx - 209.0 / 144.0));
  o.bound("endpoint discrepancy", disc, 1e-6);
  o.bound("closed-form error", err, 1e-6);
  o.bound("spot values", spot, 1e-12);
  o.require("stays in q^2 > 0", !a.left_domain && !b.left_domain);
  o.detail << "discrepancy " << disc << ", closed-form error " << err << ", spot error " << spot << ", steps "
           << a.steps << "+" << b.steps;
  return o;
}

Outcome criterion5() {
  Outcome o;
  Worst w;
  const auto pts = testing::random_points(505, 100, Point(-5, -5, -5, -2), Point(5, 5, 5, 2));
  for (const Point& p : pts) {
    const double r = std::abs(ode_f_residual({p[2], p[0], p[1]}, p[3]));
    w(r);
    o.bound("ODE residual", r, 1e-12);
  }
  const double control = ode_residual(1.0, 0.0, 1.0, 3.0, 6.0);
  o.bound("control vs -71/72", std::abs(control + 71.0 / 72.0), 1e-12);
  o.detail << "max residual " << w.value << ", control " << control;
  return o;
}

Outcome criterion6() {
  Outcome o;
  const TodaParams tp{};
  const MetricChart chart = toda_chart(tp);
  const auto pts = domain_points(chart, 606, 100, Point(-1, -1, -3, 0), Point(1, 1, 3, 1));
  o.require("100 domain points", pts.size() == 100);
  Worst te, mo, ei, wm;
  for (const Point& p : pts) {
    te(toda_equation_residual(tp, p));
    mo(toda_monopole_residual(tp, p));
    o.bound("Toda residual", toda_equation_residual(tp, p), 1e-12);
    o.bound("monopole residual", toda_monopole_residual(tp, p), 1e-10);
  }
  for (std::size_t i = 0; i < 20 && i < pts.size(); ++i) {
    const CurvaturePackage pkg = curvature_package(chart, pts[i]);
    ei(pkg.ric0_norm());
    wm(pkg.wminus_norm());
    o.bound("|Ric0|", pkg.ric0_norm(), 1e-8);
    o.bound("|W-|", pkg.wminus_norm(), 1e-8);
  }
  o.detail << "Toda " << te.value << ", monopole " << mo.value << ", |Ric0| " << ei.value << ", |W-| " << wm.value;
  return o;
}

Outcome criterion7() {
  Outcome o;
  const MetricChart gh = gibbons_hawking_chart({1.0, 0.0});
  const auto pts = domain_points(gh, 707, 20, Point(-2, -2, 0.2, -1), Point(2, 2, 3, 1));
  o.require("20 domain points", pts.size() == 20);
  Worst ric, small;
  double large = std::numeric_limits<double>::infinity();
  for (const Point& p : pts) {
    const CurvaturePackage pkg = curvature_package(gh, p);
    const double r = std::sqrt(pkg.ricci0_frame().squaredNorm() + 0.25 * pkg.scalar * pkg.scalar);
    ric(r);
    o.bound("|Ric|", r, 1e-9);
    const int vanishing = (pkg.wplus_norm() <= 1e-9) + (pkg.wminus_norm() <= 1e-9);
    o.require("exactly one Weyl half vanishes", vanishing == 1);
    small(std::min(pkg.wplus_norm(), pkg.wminus_norm()));
    large = std::min(large, std::max(pkg.wplus_norm(), pkg.wminus_norm()));
  }
  const MetricChart flat = gibbons_hawking_chart({0.0, 1.0});
  Worst flat_w;
  for (const Point& p : testing::random_points(708, 20, Point::Constant(-2), Point::Constant(2)))
    flat_w(curvature_package(flat, p).curv_op.norm());
  o.bound("w = 1 curvature", flat_w.value, 0.0);
  o.detail << "|Ric| " << ric.value << ", vanishing half " << small.value << ", other half >= " << large
           << ", w = 1 curvature " << flat_w.value;
  return o;
}

Outcome criterion8() {
  Outcome o;
  const MetricChart lp = lebrun_pedersen_chart({1.0, 2.0});
  const Point anchor(1.5, 1.2, 0.3, 0.4);
  const HermitianField field(lp, anchor);
  const EndomorphismField rotated = rotated_structure(field, anchor);
  Worst ein, wm, gap, lee, kil, nij;
  double control = std::numeric_limits<double>::infinity();
  for (const Point& p : domain_points(lp, 808, 6, Point(1.2, 0.8, -1, -1), Point(2.0, 2.2, 1, 1))) {
    const CurvaturePackage pkg = curvature_package(lp, p);
    ein(pkg.ric0_norm());
    wm(pkg.wminus_norm());
    o.bound("|Ric0|", pkg.ric0_norm(), 1e-8);
    o.bound("|W-|", pkg.wminus_norm(), 1e-8);
    const HermitianData hd = field.at(p);
    gap(hd.degeneracy_gap);
    o.bound("degeneracy gap", hd.degeneracy_gap, 1e-7);
    const double d = lee_form(field, p).difference;
    lee(d);
    o.bound("Lee routes", d, 1e-5);
    const double k = killing_residual(field, p).residual;
    kil(k);
    o.bound("Killing", k, 1e-5);
    const double n = nijenhuis_norm(lp, [&](const Point& q) { return field.at(q).J; }, p);
    nij(n);
    o.bound("Nijenhuis", n, 1e-5);
    const double c = nijenhuis_norm(lp, rotated, p);
    control = std::min(control, c);
    o.require("rotated J control > 1e-2", c > 1e-2);
  }
  o.detail << "|Ric0| " << ein.value << ", |W-| " << wm.value << ", gap " << gap.value << ", Lee " << lee.value
           << ", Killing " << kil.value << ", Nijenhuis " << nij.value << ", control >= " << control;
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Point anchor(1.5, 1.2, 0.3, 0.4);
  for (const LPParams params : {LPParams{1.0, 2.0}, LPParams{1.0, 3.0}}) {
    const MetricChart lp = lebrun_pedersen_chart(params);
    const HyperhermitianField hyper(lp, anchor);
    Worst ew, sf, asd, g5, phi;
    for (const Point& p : {anchor, Point(1.3, 1.0, 0.0, 0.1), Point(1.8, 1.4, 0.5, 0.5)}) {
      for (Branch b : {Branch::kPrime, Branch::kSecond}) {
        auto theta = [&](const Point& q) { return hyper.theta(q, b); };
        ew(einstein_weyl_residual(hyper.chart(), theta, p));
        sf(scalar_flat_residual(hyper.chart(), theta, p));
        asd(anti_self_dual_curvature(hyper.chart(), theta, p));
        const PhiIdentities ids = phi_identity_residuals(hyper, p, b);
        phi(std::max({ids.gau2, ids.util4, ids.util6, ids.gau1}));
      }
      g5(gau5_residual(HermitianField(hyper.chart(), p), p));
    }
    o.bound("EW", ew.value, 1e-5);
    o.bound("scalar-flat", sf.value, 1e-5);
    o.bound("|(d theta)-|", asd.value, 1e-5);
    o.bound("gau5", g5.value, 1e-4);
    o.bound("Phi identities", phi.value, 1e-4);
    o.detail << "(b, c) = (" << params.b << ", " << params.c << ") factor " << hyper.scale_factor() << ": EW "
             << ew.value << ", SF " << sf.value << ", ASD " << asd.value << ", gau5 " << g5.value << ", Phi "
             << phi.value << "; ";
  }
  const MetricChart canonic = canonic_chart(kReference);
  const Point p(1.0, 1.0, 0.0, 0.0);
  const double control = gau5_residual(HermitianField(canonic, p), p);
  o.require("canonic gau5 control >= 1e-1", control >= 1e-1);
  o.detail << "canonic control " << control;
  return o;
}

Outcome criterion10() {
  Outcome o;
  const MetricChart chart = canonic_chart(kReference);
  Worst w;
  const auto pts = domain_points(chart, 1010, 20, Point(0.85, 0.85, -2, -2), Point(1.15, 1.15, 2, 2));
  o.require("20 domain points", pts.size() == 20);
  for (const Point& p : pts) {
    const GaugeResiduals r = gauge_coframe_residuals(chart, p);
    for (double v : {r.dalpha, r.dJalpha, r.dJtheta, r.ricci1, r.ricci2}) {
      w(v);
      o.bound("structure equation", v, 1e-8);
    }
  }
  o.detail << "max residual " << w.value;
  return o;
}

Outcome criterion11() {
  Outcome o;
  const auto suite = default_suite();
  auto run = [&](int threads) {
    std::vector<VerificationReport> reports;
    for (const auto& c : suite) reports.push_back(run_suite(c, threads));
    return reports;
  };
  const auto start = std::chrono::steady_clock::now();
  const auto first = run(1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string json1 = reports_to_json(first);
  const std::string json2 = reports_to_json(run(1));
  const std::string json4 = reports_to_json(run(4));
  o.bound("single-thread runtime [s]", secs, 120.0);
  o.require("suite passes", exit_code(first) == 0);
  o.require("identical across runs", json1 == json2);
  o.require("identical across thread counts", json1 == json4);
  o.require("CSV identical", reports_to_csv(first) == reports_to_csv(run(3)));
  int records = 0;
  for (const auto& r : first) records += r.evaluations();
  o.detail << suite.size() << " configs, " << records << " records, " << secs << " s single-threaded, "
           << json1.size() << " bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"baselines: flat and round S^4", criterion1},
      {"canonic (0, -695/576, 1) grid", criterion2},
      {"discovered canonic parameters with s != 0", criterion3},
      {"Frobenius path integration and spot values", criterion4},
      {"ODE for f and its negative control", criterion5},
      {"Toda and monopole equations, Einstein and W- = 0", criterion6},
      {"Gibbons-Hawking w = z and w = 1", criterion7},
      {"LeBrun-Pedersen (1, 2) Hermitian structure", criterion8},
      {"hyperhermitian Einstein-Weyl suite", criterion9},
      {"canonic coframe structure equations", criterion10},
      {"default suite runtime and determinism", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu %s | %s | %.2f s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
