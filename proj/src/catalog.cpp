#include "sdeh/catalog.hpp"

#include <cmath>
#include <sstream>

namespace sdeh {

namespace {

template <typename S>
using Form = std::array<S, 4>;

template <typename S>
void add_outer(Sym4<S>& g, const S& weight, const Form<S>& a) {
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) g(i, j) = g(i, j) + weight * a[i] * a[j];
}

template <typename S>
Sym4<S> zero_sym() {
  Sym4<S> g;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) g(i, j) = S(0.0);
  return g;
}

OneForm to_vec(const Form<double>& a) { return OneForm(a[0], a[1], a[2], a[3]); }

Form<double> coords_of(const Point& p) { return {p[0], p[1], p[2], p[3]}; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Eigen::Vector4d unit(int i) {
  Eigen::Vector4d v = Eigen::Vector4d::Zero();
  v[i] = 1.0;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

MetricChart canonic_chart(const CanonicParams& c) {
  MetricChart chart;
  chart.name = "canonic";
  chart.params = {{"s", c.s}, {"a", c.a}, {"b", c.b}};
  chart.coordinates = {"x", "y", "z", "t"};
  chart.domain_violation = [c](const Point& p) -> std::optional<std::string> {
    if (!std::isfinite(p.sum())) return "non-finite coordinates";
    if (p[0] == 0.0) return "x != 0 violated";
    if (!(p[1] > 0.0)) return "y > 0 violated";
    const auto sc = canonic_scalars(c, p[0], p[1]);
    if (!(sc.q2 > 0.0)) return "q^2 > 0 violated (q^2 = " + fmt(sc.q2) + ")";
    return std::nullopt;
  };
  bind_metric(chart, [c](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const auto cf = canonic_coframe<S>(c, x);
    Sym4<S> g = zero_sym<S>();
    const S w = 1.0 / x[1];
    add_outer(g, w, cf.theta);
    add_outer(g, w, cf.jtheta);
    add_outer(g, w, cf.alpha);
    add_outer(g, w, cf.jalpha);
    return g;
  });
  // (theta, J theta, alpha, J alpha) is declared positive; its determinant
  // in (x, y, z, t) is y^2 / (2 x^5).
  chart.orientation = [](const Point& p) { return p[0] > 0.0 ? 1 : -1; };
  chart.hermitian_candidate = [c](const Point& p) {
    const auto cf = canonic_coframe<double>(c, coords_of(p));
    return TwoForm((wedge(to_vec(cf.theta), to_vec(cf.jtheta)) +
                    wedge(to_vec(cf.alpha), to_vec(cf.jalpha))) /
                   p[1]);
  };
  chart.lee_candidate = [](const Point& p) { return OneForm(1.0 / p[0], 0.0, 0.0, 0.0); };
  chart.killing_candidates = {[](const Point&) { return unit(3); },
                              [](const Point&) { return unit(2); }};
  return chart;
}

// ---------------------------------------------------------------------------

MetricChart toda_chart(const TodaParams& tp) {
  if (tp.s == 0.0) throw PreconditionError("toda chart requires s != 0");
  MetricChart chart;
  chart.name = "toda";
  chart.params = {{"s", tp.s}, {"a", tp.a}, {"b", tp.b}, {"c", tp.c}};
  chart.coordinates = {"x", "y", "z", "tau"};
  chart.domain_violation = [tp](const Point& p) -> std::optional<std::string> {
    if (!std::isfinite(p.sum())) return "non-finite coordinates";
    const double z = p[2];
    if (z == 0.0) return "z != 0 violated";
    if (!(tp.c + tp.b * z + tp.a * z * z > 0.0)) return "c + b z + a z^2 > 0 violated";
    if (!(1.0 + tp.a * (p[0] * p[0] + p[1] * p[1]) > 0.0))
      return "1 + a (x^2 + y^2) > 0 violated";
    const auto sc = toda_scalars(tp, coords_of(p));
    if (!(sc.w > 0.0)) return "w > 0 violated";
    return std::nullopt;
  };
  bind_metric(chart, [tp](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const auto sc = toda_scalars<S>(tp, x);
    const auto omega = toda_connection_form<S>(tp, x);
    const S inv_z2 = 1.0 / (x[2] * x[2]);
    Sym4<S> g = zero_sym<S>();
    const S horiz = inv_z2 * sc.eu * sc.w;
    g(0, 0) = horiz;
    g(1, 1) = horiz;
    g(2, 2) = inv_z2 * sc.w;
    add_outer(g, inv_z2 / sc.w, omega);
    return g;
  });
  chart.orientation = [](const Point&) { return 1; };
  chart.hermitian_candidate = [tp](const Point& p) {
    const auto x = coords_of(p);
    const auto sc = toda_scalars<double>(tp, x);
    const OneForm omega = to_vec(toda_connection_form<double>(tp, x));
    const double inv_z2 = 1.0 / (p[2] * p[2]);
    return TwoForm(inv_z2 * (sc.w * sc.eu * wedge(unit(0), unit(1)) + wedge(unit(2), omega)));
  };
  chart.killing_candidates = {[](const Point&) { return unit(3); }};
  return chart;
}

double toda_equation_residual(const TodaParams& tp, const Point& p) {
  const auto sc = toda_scalars<Jet>(tp, seed_coordinates<double>(p));
  return std::abs(sc.u.hess(0, 0) + sc.u.hess(1, 1) + sc.eu.hess(2, 2));
}

double toda_monopole_residual(const TodaParams& tp, const Point& p) {
  const JetPoint X = seed_coordinates<double>(p);
  const auto sc = toda_scalars<Jet>(tp, X);
  const Jet weu = sc.w * sc.eu;
  TwoForm source = TwoForm::Zero();
  source(1, 2) = sc.w.grad(0);
  source(2, 0) = sc.w.grad(1);
  source(0, 1) = weu.grad(2);
  source -= TwoForm(source.transpose());
  return (exterior_derivative(toda_connection_form<Jet>(tp, X)) + source).cwiseAbs().maxCoeff();
}

double toda_potential_residual(const TodaParams& tp, const Point& p) {
  const JetPoint X = seed_coordinates<double>(p);
  const auto sc = toda_scalars<Jet>(tp, X);
  return std::abs(sc.w.value() - 6.0 * (p[2] * sc.u.grad(2) - 2.0) / tp.s);
}

// ---------------------------------------------------------------------------

MetricChart lebrun_pedersen_chart(const LPParams& lp) {
  MetricChart chart;
  chart.name = "lebrun_pedersen";
  chart.params = {{"b", lp.b}, {"c", lp.c}};
  chart.coordinates = {"t", "theta", "phi", "psi"};
  chart.domain_violation = [lp](const Point& p) -> std::optional<std::string> {
    if (!std::isfinite(p.sum())) return "non-finite coordinates";
    const double t = p[0];
    if (!(t > 0.0)) return "t > 0 violated";
    if (lp.b * t * t + 4.0 * lp.c == 0.0) return "b t^2 + 4c != 0 violated";
    const double t2 = t * t;
    if (!(1.0 + 8.0 * lp.b / t2 + 16.0 * lp.c / (t2 * t2) > 0.0))
      return "1 + 8b/t^2 + 16c/t^4 > 0 violated";
    if (!(std::sin(p[1]) > 0.0)) return "0 < theta < pi violated";
    return std::nullopt;
  };
  bind_metric(chart, [lp](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S& t = x[0];
    const S t2 = t * t;
    const S delta = 1.0 + 8.0 * lp.b / t2 + 16.0 * lp.c / (t2 * t2);
    const S denom = lp.b * t2 + 4.0 * lp.c;
    const S pref = 1.0 / (denom * denom);
    const auto sigma = euler_sigma<S>(x[1], x[3]);
    Sym4<S> g = zero_sym<S>();
    g(0, 0) = pref / delta;
    const S side = pref * t2 / 4.0;
    add_outer(g, side, sigma[0]);
    add_outer(g, side, sigma[1]);
    add_outer(g, side * delta, sigma[2]);
    return g;
  });
  // (t, theta, phi, psi) positively oriented: W- vanishes and the Kaehler
  // form below is self-dual.
  chart.orientation = [](const Point&) { return 1; };
  chart.hermitian_candidate = [lp](const Point& p) {
    const double t = p[0];
    const double denom = lp.b * t * t + 4.0 * lp.c;
    const double pref = 1.0 / (denom * denom);
    const auto sigma = euler_sigma<double>(p[1], p[3]);
    return TwoForm(pref * (t / 2.0) * wedge(unit(0), to_vec(sigma[2])) -
                   pref * (t * t / 4.0) * wedge(to_vec(sigma[0]), to_vec(sigma[1])));
  };
  chart.killing_candidates = {[](const Point&) { return unit(3); },
                              [](const Point&) { return unit(2); }};
  return chart;
}

// ---------------------------------------------------------------------------

MetricChart gibbons_hawking_chart(const GHParams& gh) {
  MetricChart chart;
  chart.name = "gibbons_hawking";
  chart.params = {{"a", gh.a}, {"b", gh.b}};
  chart.coordinates = {"x", "y", "z", "tau"};
  chart.domain_violation = [gh](const Point& p) -> std::optional<std::string> {
    if (!std::isfinite(p.sum())) return "non-finite coordinates";
    if (!(gh.a * p[2] + gh.b > 0.0)) return "w = a z + b > 0 violated";
    return std::nullopt;
  };
  bind_metric(chart, [gh](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S w = gh.a * x[2] + gh.b;
    const Form<S> omega{S(0.0), -gh.a * x[0], S(0.0), S(1.0)};
    Sym4<S> g = zero_sym<S>();
    g(0, 0) = w;
    g(1, 1) = w;
    g(2, 2) = w;
    add_outer(g, 1.0 / w, omega);
    return g;
  });
  chart.orientation = [](const Point&) { return 1; };
  chart.hermitian_candidate = [gh](const Point& p) {
    const double w = gh.a * p[2] + gh.b;
    const OneForm omega(0.0, -gh.a * p[0], 0.0, 1.0);
    return TwoForm(w * wedge(unit(0), unit(1)) + wedge(unit(2), omega));
  };
  chart.killing_candidates = {[](const Point&) { return unit(3); },
                              [](const Point&) { return unit(1); }};
  return chart;
}

// ---------------------------------------------------------------------------

MetricChart space_form_chart(SpaceForm kind, double radius) {
  if (!(radius > 0.0)) throw PreconditionError("space form radius must be positive");
  MetricChart chart;
  chart.coordinates = {"x0", "x1", "x2", "x3"};
  chart.orientation = [](const Point&) { return 1; };
  chart.domain_violation = [](const Point& p) -> std::optional<std::string> {
    if (!std::isfinite(p.sum())) return "non-finite coordinates";
    return std::nullopt;
  };
  const double r2 = radius * radius;
  switch (kind) {
    case SpaceForm::kFlat:
      chart.name = "flat";
      bind_metric(chart, [](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        Sym4<S> g = zero_sym<S>();
        for (int i = 0; i < 4; ++i) g(i, i) = S(1.0);
        return g;
      });
      chart.hermitian_candidate = [](const Point&) {
        return TwoForm(wedge(unit(0), unit(1)) + wedge(unit(2), unit(3)));
      };
      chart.lee_candidate = [](const Point&) { return OneForm::Zero().eval(); };
      break;
    case SpaceForm::kSphere:
    case SpaceForm::kHyperbolic: {
      const double sign = kind == SpaceForm::kSphere ? 1.0 : -1.0;
      chart.name = kind == SpaceForm::kSphere ? "sphere" : "hyperbolic";
      chart.params = {{"r", radius}};
      if (kind == SpaceForm::kHyperbolic) {
        chart.domain_violation = [r2](const Point& p) -> std::optional<std::string> {
          if (!std::isfinite(p.sum())) return "non-finite coordinates";
          if (!(p.squaredNorm() < r2)) return "|x| < r violated";
          return std::nullopt;
        };
      }
      // 4 r^4 / (r^2 +- |x|^2)^2 times the Euclidean metric.
      bind_metric(chart, [r2, sign](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        S rho = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        const S d = r2 + sign * rho;
        const S conf = 4.0 * r2 * r2 / (d * d);
        Sym4<S> g = zero_sym<S>();
        for (int i = 0; i < 4; ++i) g(i, i) = conf;
        return g;
      });
      break;
    }
    case SpaceForm::kFubiniStudy: {
      chart.name = "fubini_study";
      // Real coordinates (x1, y1, x2, y2) of C^2; holomorphic sectional
      // curvature 4, hence Ric = 6 g and s = 24.
      bind_metric(chart, [](const auto& x) {
        using S = std::decay_t<decltype(x[0])>;
        const S rho = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        const S n = 1.0 + rho;
        const Form<S> pos{x[0], x[1], x[2], x[3]};
        const Form<S> rot{-1.0 * x[1], x[0], -1.0 * x[3], x[2]};
        Sym4<S> g = zero_sym<S>();
        for (int i = 0; i < 4; ++i) g(i, i) = 1.0 / n;
        const S w = -1.0 / (n * n);
        add_outer(g, w, pos);
        add_outer(g, w, rot);
        return g;
      });
      chart.hermitian_candidate = [m = chart.metric_value](const Point& p) {
        Matrix4 j = Matrix4::Zero();
        j(1, 0) = 1.0;
        j(0, 1) = -1.0;
        j(3, 2) = 1.0;
        j(2, 3) = -1.0;
        return TwoForm(j.transpose() * m(p));
      };
      chart.lee_candidate = [](const Point&) { return OneForm::Zero().eval(); };
      chart.killing_candidates = {[](const Point& p) {
        return Eigen::Vector4d(-p[1], p[0], -p[3], p[2]);
      }};
      break;
    }
  }
  return chart;
}

// ---------------------------------------------------------------------------

std::array<int, 3> bianchi_structure_constants(BianchiClass cls) {
  switch (cls) {
    case BianchiClass::kI: return {0, 0, 0};
    case BianchiClass::kII: return {0, 0, 1};
    case BianchiClass::kVI0: return {1, -1, 0};
    case BianchiClass::kVII0: return {1, 1, 0};
    case BianchiClass::kVIII: return {1, 1, -1};
    case BianchiClass::kIX: return {1, 1, 1};
  }
  return {0, 0, 0};
}

BianchiCoframe bianchi_coframe(BianchiClass cls) {
  BianchiCoframe out;
  out.cls = cls;
  out.structure = bianchi_structure_constants(cls);
  const Jet zero(0.0);
  const Jet one(1.0);
  switch (cls) {
    case BianchiClass::kI:
      out.sigma = [zero, one](const JetPoint&) {
        return std::array<JetOneForm, 3>{{{zero, one, zero, zero},
                                          {zero, zero, one, zero},
                                          {zero, zero, zero, one}}};
      };
      break;
    case BianchiClass::kII:
      out.sigma = [zero, one](const JetPoint& x) {
        return std::array<JetOneForm, 3>{{{zero, one, zero, zero},
                                          {zero, zero, one, zero},
                                          {zero, zero, x[1], one}}};
      };
      break;
    case BianchiClass::kVI0:
      out.sigma = [zero, one](const JetPoint& x) {
        const Jet ch = 0.5 * (exp(x[3]) + exp(-x[3]));
        const Jet sh = 0.5 * (exp(x[3]) - exp(-x[3]));
        return std::array<JetOneForm, 3>{{{zero, ch, sh, zero},
                                          {zero, sh, ch, zero},
                                          {zero, zero, zero, -one}}};
      };
      break;
    case BianchiClass::kVII0:
      out.sigma = [zero, one](const JetPoint& x) {
        const Jet c = cos(x[3]);
        const Jet s = sin(x[3]);
        return std::array<JetOneForm, 3>{{{zero, c, s, zero},
                                          {zero, -s, c, zero},
                                          {zero, zero, zero, -one}}};
      };
      break;
    case BianchiClass::kIX:
      out.sigma = [](const JetPoint& x) {
        const auto s = euler_sigma<Jet>(x[1], x[3]);
        return std::array<JetOneForm, 3>{s[0], s[1], s[2]};
      };
      break;
    case BianchiClass::kVIII:
      throw PreconditionError("Bianchi class VIII coframe is not supported");
  }
  return out;
}

double bianchi_structure_residual(const BianchiCoframe& coframe, const Point& p) {
  const auto sigma = coframe.sigma(seed_coordinates<double>(p));
  std::array<OneForm, 3> v;
  std::array<TwoForm, 3> d;
  for (int i = 0; i < 3; ++i) {
    v[i] = values(sigma[i]);
    d[i] = exterior_derivative(sigma[i]);
  }
  const auto& n = coframe.structure;
  const TwoForm r1 = d[0] - n[0] * wedge(v[1], v[2]);
  const TwoForm r2 = d[1] + n[1] * wedge(v[0], v[2]);
  const TwoForm r3 = d[2] - n[2] * wedge(v[0], v[1]);
  return std::max({r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff(), r3.cwiseAbs().maxCoeff()});
}

MetricChart bianchi_diagonal_chart(BianchiClass cls, double A, double B, double C) {
  const BianchiCoframe cf = bianchi_coframe(cls);
  MetricChart chart;
  chart.name = "bianchi_diagonal";
  chart.params = {{"A", A}, {"B", B}, {"C", C}};
  chart.coordinates = {"t", "x1", "x2", "x3"};
  chart.orientation = [](const Point&) { return 1; };
  chart.domain_violation = [cls](const Point& p) -> std::optional<std::string> {
    if (!std::isfinite(p.sum())) return "non-finite coordinates";
    if (cls == BianchiClass::kIX && !(std::sin(p[1]) > 0.0)) return "0 < theta < pi violated";
    return std::nullopt;
  };
  chart.metric_jets = [cf, A, B, C](const Point& p) {
    const auto sigma = cf.sigma(seed_coordinates<double>(p));
    Sym4<Jet> g = zero_sym<Jet>();
    g(0, 0) = Jet(1.0);
    add_outer(g, Jet(A), sigma[0]);
    add_outer(g, Jet(B), sigma[1]);
    add_outer(g, Jet(C), sigma[2]);
    return g;
  };
  chart.metric_value = [m = chart.metric_jets](const Point& p) { return values(m(p)); };
  return chart;
}

// ---------------------------------------------------------------------------

MetricChart scaled_chart(const MetricChart& chart, double factor) {
  if (!(factor > 0.0)) throw PreconditionError("metric scale factor must be positive");
  MetricChart out = chart;
  out.params["scale"] = factor;
  out.metric_jets = [m = chart.metric_jets, factor](const Point& p) {
    MetricJets g = m(p);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) g(i, j) = factor * g(i, j);
    return g;
  };
  out.metric_value = [m = chart.metric_value, factor](const Point& p) {
    return Matrix4(factor * m(p));
  };
  if (chart.hermitian_candidate)
    out.hermitian_candidate = [f = chart.hermitian_candidate, factor](const Point& p) {
      return TwoForm(factor * f(p));
    };
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<ChartInfo>& chart_registry() {
  static const std::vector<ChartInfo> registry = {
      {"flat", "Euclidean R^4", {}},
      {"sphere", "round S^4 of radius r, stereographic", {{"r", 1.0}}},
      {"hyperbolic", "hyperbolic 4-space of radius r, Poincare ball", {{"r", 1.0}}},
      {"fubini_study", "Fubini-Study metric on an affine patch of CP^2", {}},
      {"canonic", "generic self-dual Einstein Hermitian metric (x, y, z, t)",
       {{"s", 0.0}, {"a", -695.0 / 576.0}, {"b", 1.0}}},
      {"toda", "separable Toda metric (x, y, z, tau)",
       {{"s", -6.0}, {"a", 1.0}, {"b", 1.0}, {"c", 1.0}}},
      {"lebrun_pedersen", "U(2)-invariant LeBrun-Pedersen metric (t, theta, phi, psi)",
       {{"b", 1.0}, {"c", 2.0}}},
      {"gibbons_hawking", "Gibbons-Hawking metric with w = a z + b", {{"a", 1.0}, {"b", 0.0}}},
  };
  return registry;
}

MetricChart make_chart(const std::string& name, const ParamMap& overrides) {
  const ChartInfo* info = nullptr;
  for (const auto& c : chart_registry())
    if (c.name == name) info = &c;
  if (!info) throw ConfigError("unknown chart '" + name + "'");
  ParamMap p = info->defaults;
  for (const auto& [k, v] : overrides) {
    if (!p.count(k)) throw ConfigError("chart '" + name + "' has no parameter '" + k + "'");
    p[k] = v;
  }
  if (name == "flat") return space_form_chart(SpaceForm::kFlat);
  if (name == "sphere") return space_form_chart(SpaceForm::kSphere, p.at("r"));
  if (name == "hyperbolic") return space_form_chart(SpaceForm::kHyperbolic, p.at("r"));
  if (name == "fubini_study") return space_form_chart(SpaceForm::kFubiniStudy);
  if (name == "canonic") return canonic_chart({p.at("s"), p.at("a"), p.at("b")});
  if (name == "toda") return toda_chart({p.at("s"), p.at("a"), p.at("b"), p.at("c")});
  if (name == "lebrun_pedersen") return lebrun_pedersen_chart({p.at("b"), p.at("c")});
  return gibbons_hawking_chart({p.at("a"), p.at("b")});
}

}  // namespace sdeh
