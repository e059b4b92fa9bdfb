#pragma once

// Analytic charts of the self-dual Einstein Hermitian metrics and of the
// locally symmetric baselines.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "sdeh/chart.hpp"

namespace sdeh {

// ---------------------------------------------------------------------------
// Generic (non cohomogeneity-one) metrics in coordinates (x, y, z, t), where
// x is the cube root of the conformal scalar curvature and y = |theta|^2.

struct CanonicParams {
  double s = 0.0;  // scalar curvature
  double a = 0.0;
  double b = 0.0;
};

// f(x) = a x^2 + b x^4 - (x^6 - s^2)/576 and the closed-form p, q^2, h.
template <typename S>
struct CanonicScalars {
  S f, fprime, p, q2, h;
};

template <typename S>
CanonicScalars<S> canonic_scalars(const CanonicParams& c, const S& x, const S& y) {
  CanonicScalars<S> r;
  const S x2 = x * x;
  const S x3 = x2 * x;
  const S x4 = x2 * x2;
  const S x6 = x3 * x3;
  r.f = c.a * x2 + c.b * x4 - (x6 - c.s * c.s) / 576.0;
  r.fprime = 2.0 * c.a * x + 4.0 * c.b * x3 - 6.0 * x4 * x / 576.0;
  const S k = (x3 - c.s) / 24.0;
  r.p = r.f / (y * y) - k / y + 0.25;
  r.q2 = (0.5 * x * r.fprime - r.f + k * k) / (y * y) - x3 / (24.0 * y) - r.p * r.p;
  r.h = y * r.p / x2 + x / 24.0;
  return r;
}

// The adapted coframe theta, J theta, alpha, J alpha (each of norm^2 = y),
// with q = +sqrt(q^2).
template <typename S>
struct CanonicCoframe {
  std::array<S, 4> theta, jtheta, alpha, jalpha;
  CanonicScalars<S> scalars;
  S q;
};

template <typename S>
CanonicCoframe<S> canonic_coframe(const CanonicParams& c, const std::array<S, 4>& coords) {
  using std::sqrt;
  const S& x = coords[0];
  const S& y = coords[1];
  CanonicCoframe<S> r;
  r.scalars = canonic_scalars(c, x, y);
  r.q = sqrt(r.scalars.q2);
  const S zero(0.0);
  const S bracket = r.scalars.p - (x * x * x - c.s) / (24.0 * y) + 0.5;
  r.theta = {1.0 / x, zero, zero, zero};
  r.jtheta = {zero, zero, y * r.scalars.h / x, y / x};
  r.alpha = {-bracket / (r.q * x), 1.0 / (2.0 * r.q * y), zero, zero};
  r.jalpha = {zero, zero, r.q * y * y / (x * x * x), zero};
  return r;
}

MetricChart canonic_chart(const CanonicParams& params);

// ---------------------------------------------------------------------------
// Separable SU(infinity) Toda metrics in coordinates (x, y, z, tau).

struct TodaParams {
  double s = -6.0;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
};

template <typename S>
struct TodaScalars {
  S u, eu, w, phi;  // phi: omega = d tau + phi (y dx - x dy)
};

template <typename S>
TodaScalars<S> toda_scalars(const TodaParams& p, const std::array<S, 4>& coords) {
  using std::log;
  const S& x = coords[0];
  const S& y = coords[1];
  const S& z = coords[2];
  const S quad = p.c + p.b * z + p.a * z * z;
  const S radial = 1.0 + p.a * (x * x + y * y);
  TodaScalars<S> r;
  r.u = std::log(4.0) + log(quad) - 2.0 * log(radial);
  r.eu = 4.0 * quad / (radial * radial);
  r.w = -6.0 * (p.b * z + 2.0 * p.c) / (p.s * quad);
  r.phi = -12.0 * p.b / (p.s * radial);
  return r;
}

template <typename S>
std::array<S, 4> toda_connection_form(const TodaParams& p, const std::array<S, 4>& coords) {
  const auto sc = toda_scalars(p, coords);
  return {sc.phi * coords[1], -1.0 * sc.phi * coords[0], S(0.0), S(1.0)};
}

MetricChart toda_chart(const TodaParams& params);

// |u_xx + u_yy + (e^u)_zz| with jets.
double toda_equation_residual(const TodaParams& params, const Point& p);

// Largest coefficient of d omega + w_x dy^dz + w_y dz^dx + (w e^u)_z dx^dy.
double toda_monopole_residual(const TodaParams& params, const Point& p);

// |w - 6 (z u_z - 2)/s|
double toda_potential_residual(const TodaParams& params, const Point& p);

// ---------------------------------------------------------------------------
// LeBrun-Pedersen U(2)-invariant metrics in coordinates (t, theta, phi, psi).

struct LPParams {
  double b = 1.0;
  double c = 2.0;
};

MetricChart lebrun_pedersen_chart(const LPParams& params);

// ---------------------------------------------------------------------------
// Gibbons-Hawking metrics with w = a z + b, coordinates (x, y, z, tau).

struct GHParams {
  double a = 1.0;
  double b = 0.0;
};

MetricChart gibbons_hawking_chart(const GHParams& params);

// ---------------------------------------------------------------------------
// Locally symmetric baselines.

enum class SpaceForm { kFlat, kSphere, kHyperbolic, kFubiniStudy };

MetricChart space_form_chart(SpaceForm kind, double radius = 1.0);

// ---------------------------------------------------------------------------
// Left-invariant coframes of the three-dimensional Bianchi class A groups,
// on coordinates (t, x1, x2, x3) with t unused.

enum class BianchiClass { kI, kII, kVI0, kVII0, kVIII, kIX };

struct BianchiCoframe {
  BianchiClass cls;
  std::array<int, 3> structure;  // (n1, n2, n3)
  // sigma_1..3 as jet-valued 1-forms.
  std::function<std::array<JetOneForm, 3>(const JetPoint&)> sigma;
};

std::array<int, 3> bianchi_structure_constants(BianchiClass cls);
BianchiCoframe bianchi_coframe(BianchiClass cls);

// Residual max |d sigma_i - n_i (...)| of the structure equations at a point.
double bianchi_structure_residual(const BianchiCoframe& coframe, const Point& p);

// dt^2 + A sigma1^2 + B sigma2^2 + C sigma3^2 with constant A, B, C.
MetricChart bianchi_diagonal_chart(BianchiClass cls, double A, double B, double C);

// Euler-angle SU(2) forms with d sigma_i = sigma_j ^ sigma_k cyclically.
template <typename S>
std::array<std::array<S, 4>, 3> euler_sigma(const S& theta, const S& psi) {
  using std::cos;
  using std::sin;
  const S zero(0.0);
  const S one(1.0);
  const S st = sin(theta);
  const S ct = cos(theta);
  const S sp = sin(psi);
  const S cp = cos(psi);
  // Components on (t, theta, phi, psi).
  return {{{zero, -1.0 * cp, -1.0 * sp * st, zero},
           {zero, sp, -1.0 * cp * st, zero},
           {zero, zero, -1.0 * ct, -1.0 * one}}};
}

// ---------------------------------------------------------------------------
// The same chart with metric factor c > 0: Kaehler candidate scaled by c,
// Lee and Killing candidates unchanged.

MetricChart scaled_chart(const MetricChart& chart, double factor);

// ---------------------------------------------------------------------------
// Name-based lookup used by the command line.

struct ChartInfo {
  std::string name;
  std::string description;
  ParamMap defaults;
};

const std::vector<ChartInfo>& chart_registry();
MetricChart make_chart(const std::string& name, const ParamMap& overrides);

}  // namespace sdeh
