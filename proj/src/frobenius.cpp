#include "sdeh/frobenius.hpp"

#include <algorithm>
#include <cmath>

#include "sdeh/errors.hpp"
#include "sdeh/forms.hpp"

namespace sdeh {

PQ closed_form_pq(const SolutionConstants& c, double x, double y) {
  const auto sc = canonic_scalars(c, x, y);
  return {sc.p, sc.q2};
}

FrobeniusRhs frobenius_rhs(const FrobeniusState& st, const SolutionConstants& c) {
  return frobenius_rhs_t(st.x, st.y, st.p, st.q2, c.s);
}

std::array<double, 2> frobenius_integrability(const FrobeniusState& st, const SolutionConstants& c) {
  const FrobeniusRhs r = frobenius_rhs(st, c);
  const Jet x = Jet::variable(st.x, 0);
  const Jet y = Jet::variable(st.y, 1);
  // First-order solution jets through the state.
  const Jet p = st.p + r.dp_dx * (x - st.x) + r.dp_dy * (y - st.y);
  const Jet q2 = st.q2 + r.dq2_dx * (x - st.x) + r.dq2_dy * (y - st.y);
  const auto rj = frobenius_rhs_t(x, y, p, q2, c.s);
  return {rj.dp_dx.grad(1) - rj.dp_dy.grad(0), rj.dq2_dx.grad(1) - rj.dq2_dy.grad(0)};
}

// ---------------------------------------------------------------------------

namespace {

using Vec2 = Eigen::Vector2d;

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200,
                           187.0 / 2100, 1.0 / 40};

}  // namespace

IntegrationResult integrate_frobenius(const FrobeniusState& start, const SolutionConstants& c,
                                      const std::vector<std::array<double, 2>>& path,
                                      double tolerance) {
  IntegrationResult out;
  FrobeniusState st = start;
  out.left_domain = !(st.q2 > 0.0);

  for (const auto& target : path) {
    const double x0 = st.x;
    const double y0 = st.y;
    const double dx = target[0] - x0;
    const double dy = target[1] - y0;
    if (dx == 0.0 && dy == 0.0) continue;

    auto rhs = [&](double tau, const Vec2& u) {
      FrobeniusState s{x0 + tau * dx, y0 + tau * dy, u[0], u[1]};
      if (s.x == 0.0 || !(s.y > 0.0)) throw DomainError("integration path leaves x != 0, y > 0");
      const FrobeniusRhs r = frobenius_rhs(s, c);
      return Vec2(r.dp_dx * dx + r.dp_dy * dy, r.dq2_dx * dx + r.dq2_dy * dy);
    };

    Vec2 u(st.p, st.q2);
    double tau = 0.0;
    double h = 1e-2;
    while (tau < 1.0) {
      h = std::min(h, 1.0 - tau);
      std::array<Vec2, 7> k;
      k[0] = rhs(tau, u);
      for (int i = 1; i < 7; ++i) {
        Vec2 ui = u;
        for (int j = 0; j < i; ++j) ui += h * kA[i][j] * k[j];
        k[i] = rhs(tau + kC[i] * h, ui);
      }
      Vec2 u5 = u;
      Vec2 u4 = u;
      for (int i = 0; i < 7; ++i) {
        u5 += h * kB5[i] * k[i];
        u4 += h * kB4[i] * k[i];
      }
      const double scale = 1.0 + u.cwiseAbs().maxCoeff();
      const double err = (u5 - u4).cwiseAbs().maxCoeff() / scale;
      if (err <= tolerance) {
        tau += h;
        u = u5;
        ++out.steps;
        if (!(u[1] > 0.0)) out.left_domain = true;
      } else {
        ++out.rejected;
      }
      const double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(tolerance / err, 0.2);
      h *= std::clamp(factor, 0.2, 5.0);
      if (h < 1e-14) throw DomainError("integration step size underflow");
    }
    st = {target[0], target[1], u[0], u[1]};
  }
  out.end = st;
  return out;
}

// ---------------------------------------------------------------------------

double ode_residual(double x, double s, double f, double fprime, double fsecond) {
  const double x6 = std::pow(x, 6);
  return x * x * fsecond - 5.0 * x * fprime + 8.0 * f + (x6 - s * s) / 72.0;
}

double ode_f_residual(const SolutionConstants& c, double x) {
  const double x2 = x * x;
  const double x4 = x2 * x2;
  const double f = c.a * x2 + c.b * x4 - (x4 * x2 - c.s * c.s) / 576.0;
  const double fp = 2.0 * c.a * x + 4.0 * c.b * x2 * x - 6.0 * x4 * x / 576.0;
  const double fpp = 2.0 * c.a + 12.0 * c.b * x2 - 30.0 * x4 / 576.0;
  return ode_residual(x, c.s, f, fp, fpp);
}

// ---------------------------------------------------------------------------

double GaugeResiduals::max() const {
  return std::max({dalpha, dJalpha, dJbeta, dJa, dJtheta, ricci1, ricci2});
}

namespace {

using Form = JetOneForm;

Form scale(const Jet& f, const Form& a) {
  Form r;
  for (int i = 0; i < 4; ++i) r[i] = f * a[i];
  return r;
}

Form add(const Form& a, const Form& b) {
  Form r;
  for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

GaugeResiduals gauge_coframe_residuals(const MetricChart& chart, const Point& p) {
  if (chart.name != "canonic") throw PreconditionError("gauge coframe residuals need a canonic chart");
  chart.require_domain(p);
  const SolutionConstants c{chart.param("s"), chart.param("a"), chart.param("b")};
  const Matrix4 g_inv = chart.metric_value(p).inverse();
  auto norm1 = [&](const OneForm& a) { return std::sqrt(std::max(0.0, inner1(a, a, g_inv))); };
  auto norm2 = [&](const TwoForm& w) { return std::sqrt(std::max(0.0, norm2_sq(w, g_inv))); };

  const JetPoint X = seed_coordinates<double>(p);
  const auto cf = canonic_coframe<Jet>(c, X);
  const Jet& x = X[0];
  const Jet& y = X[1];
  const Jet& pp = cf.scalars.p;
  const Jet& q = cf.q;
  const Jet kappa = x * x * x;
  const Jet ks = (kappa - c.s) / (12.0 * y);

  const OneForm th = values(cf.theta);
  const OneForm jth = values(cf.jtheta);
  const OneForm al = values(cf.alpha);
  const OneForm jal = values(cf.jalpha);

  // beta = B J alpha - (kappa - s)/(12 y) J theta, and J beta with J(J a) = -a.
  const Jet B = (pp * (2.0 * pp + ks - 1.0) - kappa / (24.0 * y) + 2.0 * q * q) / q;
  const Form beta = add(scale(B, cf.jalpha), scale(-1.0 * ks, cf.jtheta));
  const OneForm jbeta = -B.value() * al + ks.value() * th;

  GaugeResiduals r;
  const TwoForm dal = exterior_derivative(cf.alpha);
  r.dalpha = std::max(norm2(dal - ks.value() * wedge(al, th)), norm2(dal - wedge(al, jbeta)));

  const TwoForm djal = exterior_derivative(cf.jalpha);
  r.dJalpha = norm2(djal - wedge(jal, jbeta));

  const Jet potential = log(abs(kappa) / (abs(q) * y * y));
  r.dJbeta = norm1(jbeta - differential(potential));

  r.dJa = norm2(exterior_derivative(scale(kappa / (q * y * y), cf.jalpha)));

  const Jet w = cbrt(kappa) / y;
  const OneForm eta = -2.0 * q.value() * th + (2.0 * pp.value() + ks.value() - 1.0) * al;
  r.dJtheta = norm2(exterior_derivative(scale(w, cf.jtheta)) - w.value() * wedge(jal, eta));

  const double yv = y.value();
  const double kms = (kappa.value() - c.s) / 12.0;
  const OneForm bv = values(beta);
  const TwoForm phi = -(wedge(al, jth) + wedge(jal, th)) / yv;
  const TwoForm jphi = (wedge(al, th) - wedge(jal, jth)) / yv;
  r.ricci1 = std::max(norm2(dal - wedge(bv, jal) - kms * jphi),
                      norm2(djal + wedge(bv, al) + kms * phi));

  const TwoForm F = (wedge(th, jth) + wedge(al, jal)) / yv;
  r.ricci2 = norm2(exterior_derivative(beta) + wedge(al, jal) +
                   (c.s + 2.0 * kappa.value()) / 12.0 * F);
  return r;
}

}  // namespace sdeh
