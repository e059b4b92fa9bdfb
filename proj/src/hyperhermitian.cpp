#include "sdeh/hyperhermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdeh/catalog.hpp"
#include "sdeh/errors.hpp"
#include "sdeh/stencil.hpp"

namespace sdeh {

WeylLeeData hyper_lee_forms(const HermitianData& hd, const OneForm& theta_J) {
  WeylLeeData wd;
  wd.lambda = hd.kappa / 6.0;
  if (wd.lambda == 0.0) throw PreconditionError("simple eigenvalue vanishes");
  if (theta_J.isZero(0.0)) throw PreconditionError("theta_J vanishes: K is trivial");
  wd.cube_root = std::cbrt(wd.lambda);
  const double t2 = wd.cube_root * wd.cube_root;
  wd.F = hd.F;
  wd.J = hd.J;
  wd.theta_J = theta_J;
  wd.j_theta_J = apply_j(hd.J, theta_J);
  wd.theta_prime = (theta_J - wd.cube_root * wd.j_theta_J) / (1.0 + t2);
  wd.theta_second = (theta_J + wd.cube_root * wd.j_theta_J) / (1.0 + t2);
  wd.Phi = 0.5 * t2 * hd.F;
  return wd;
}

std::vector<double> rescale_candidates(double lambda, double scalar, double theta_j_sq) {
  // With v = c^{2/3} and t = lambda^{1/3} the condition is the quadratic
  //   -(t/2) v^2 - (t^3/2 + s/12 + |theta_J|^2) v - s t^2/12 = 0.
  const double t = std::cbrt(lambda);
  if (t == 0.0) throw PreconditionError("simple eigenvalue vanishes");
  const double A = -0.5 * t;
  const double B = -(0.5 * t * t * t + scalar / 12.0 + theta_j_sq);
  const double C = -scalar * t * t / 12.0;
  std::vector<double> roots;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return roots;
  const double sq = std::sqrt(disc);
  // Numerically stable pair.
  const double qq = -0.5 * (B + std::copysign(sq, B));
  for (double v : {qq / A, qq != 0.0 ? C / qq : std::numeric_limits<double>::quiet_NaN()})
    if (std::isfinite(v) && v > 0.0) roots.push_back(std::pow(v, 1.5));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------

HyperhermitianField::HyperhermitianField(const MetricChart& chart, const Point& anchor) {
  const HermitianField base(chart, anchor);
  const CurvaturePackage pkg = curvature_package(chart, anchor);
  const HermitianData hd = base.at(anchor);
  const OneForm theta_J = lee_form_from_kappa(base, anchor);
  const auto candidates =
      rescale_candidates(hd.kappa / 6.0, pkg.scalar, inner1(theta_J, theta_J, pkg.metric_inv));
  if (candidates.empty())
    throw PreconditionError(chart.name + ": no positive rescaling normalizes Phi");

  double chosen = candidates.front();
  double best = std::numeric_limits<double>::infinity();
  for (double c : candidates) {
    scaled_ = std::make_shared<const MetricChart>(scaled_chart(chart, c));
    hermitian_ = std::make_shared<const HermitianField>(*scaled_, anchor);
    factor_ = c;
    const double closure = phi_identity_residuals(*this, anchor, Branch::kPrime).closure;
    if (closure < best) {
      best = closure;
      chosen = c;
    }
  }
  scaled_ = std::make_shared<const MetricChart>(scaled_chart(chart, chosen));
  hermitian_ = std::make_shared<const HermitianField>(*scaled_, anchor);
  factor_ = chosen;
}

WeylLeeData HyperhermitianField::at(const Point& p) const {
  return hyper_lee_forms(hermitian_->at(p), lee_form_from_kappa(*hermitian_, p));
}

OneForm HyperhermitianField::theta(const Point& p, Branch b) const {
  const WeylLeeData wd = at(p);
  return b == Branch::kPrime ? wd.theta_prime : wd.theta_second;
}

TwoForm HyperhermitianField::phi(const Point& p, Branch b) const {
  const HermitianData hd = hermitian_->at(p);
  const double t = std::cbrt(hd.kappa / 6.0);
  const TwoForm Phi = 0.5 * t * t * hd.F;
  return b == Branch::kPrime ? Phi : TwoForm(-Phi);
}

// ---------------------------------------------------------------------------

namespace {

struct FirstJet {
  CurvaturePackage pkg;
  OneForm theta;
  std::array<OneForm, 4> d;
  Matrix4 D;  // D_i theta_j
  double delta = 0.0;
  double norm_sq = 0.0;
};

FirstJet first_jet(const MetricChart& chart, const OneFormField& theta, const Point& p) {
  FirstJet j{curvature_package(chart, p), theta(p), partials(chart, theta, p), Matrix4::Zero()};
  j.D = covariant_1form(j.pkg.gamma, j.theta, j.d);
  j.delta = codifferential_1form(j.pkg.metric_inv, j.D);
  j.norm_sq = inner1(j.theta, j.theta, j.pkg.metric_inv);
  return j;
}

}  // namespace

double einstein_weyl_residual(const MetricChart& chart, const OneFormField& theta, const Point& p) {
  const FirstJet j = first_jet(chart, theta, p);
  const Matrix4& g = j.pkg.metric;
  const Matrix4 ric0 = j.pkg.ricci - 0.25 * j.pkg.scalar * g;
  const Matrix4 r = j.D - j.theta * j.theta.transpose() + 0.25 * (j.delta + j.norm_sq) * g -
                    0.5 * exterior_derivative(j.d) - 0.5 * ric0;
  return frame_components(r, j.pkg.frame).norm();
}

double scalar_flat_residual(const MetricChart& chart, const OneFormField& theta, const Point& p) {
  const FirstJet j = first_jet(chart, theta, p);
  return std::abs(j.pkg.scalar - 6.0 * (-j.delta + j.norm_sq));
}

double anti_self_dual_curvature(const MetricChart& chart, const OneFormField& theta, const Point& p) {
  const CurvaturePackage pkg = curvature_package(chart, p);
  const TwoForm minus = anti_self_dual_part(exterior_derivative(partials(chart, theta, p)), pkg.coframe);
  return std::sqrt(std::max(0.0, norm2_sq(minus, pkg.metric_inv)));
}

double gau5_residual(const HermitianField& field, const Point& p) {
  const MetricChart& chart = field.chart();
  auto theta_J = [&](const Point& q) { return lee_form_from_kappa(field, q); };
  const FirstJet j = first_jet(chart, theta_J, p);
  const HermitianData hd = field.at(p);
  const double l = hd.kappa / 6.0;
  const double t = std::cbrt(l);
  const double t2 = t * t;
  const OneForm jt = apply_j(hd.J, j.theta);
  const Matrix4 r = j.D - (1.0 + t2) * (j.pkg.scalar + 3.0 * t) / 12.0 * j.pkg.metric -
                    (1.0 + 2.0 * t2) / (1.0 + t2) * j.theta * j.theta.transpose() -
                    t2 / (1.0 + t2) * jt * jt.transpose();
  return frame_components(r, j.pkg.frame).norm();
}

PhiIdentities phi_identity_residuals(const HyperhermitianField& field, const Point& p, Branch b) {
  const MetricChart& chart = field.chart();
  auto theta = [&](const Point& q) { return field.theta(q, b); };
  auto phi = [&](const Point& q) { return field.phi(q, b); };
  const FirstJet j = first_jet(chart, theta, p);
  const CurvaturePackage& pkg = j.pkg;
  const Matrix4& g_inv = pkg.metric_inv;
  const double lambda = field.at(p).lambda;
  const double s12 = pkg.scalar / 12.0;

  const TwoForm Phi = phi(p);
  const auto DPhi = covariant_2form(pkg.gamma, Phi, partials(chart, phi, p));
  const double phi_sq = norm2_sq(Phi, g_inv);
  const Eigen::Vector4d theta_vec = g_inv * j.theta;

  PhiIdentities out;
  const TwoForm closure = exterior_derivative(j.d) - Phi;
  out.closure = std::sqrt(std::max(0.0, norm2_sq(closure, g_inv)));

  auto norm_sq_field = [&](const Point& q) {
    const OneForm th = field.theta(q, b);
    return inner1(th, th, chart.metric_value(q).inverse());
  };
  const OneForm dnorm = stencil_differential(chart, norm_sq_field, p);
  const OneForm phi_theta = Phi.transpose() * theta_vec;  // Phi(theta, .)
  const OneForm g2 = dnorm - (s12 + j.norm_sq) * j.theta + phi_theta;
  out.gau2 = std::sqrt(std::max(0.0, inner1(g2, g2, g_inv)));

  out.util4 = std::abs(phi_sq + lambda * (s12 + j.norm_sq));

  double dphi_sq = 0.0;
  for (int C = 0; C < 4; ++C) {
    TwoForm along = TwoForm::Zero();
    for (int c = 0; c < 4; ++c) along += pkg.frame(c, C) * DPhi[c];
    dphi_sq += norm2_sq(along, g_inv);
  }
  out.util6 = std::abs(dphi_sq + (phi_sq / lambda + s12) * (6.0 * phi_sq + 3.0 * lambda * lambda));

  for (const TwoForm& psi : pkg.lambda_plus) {
    const Eigen::Vector4d v = endomorphism(psi, g_inv) * theta_vec;
    TwoForm along = TwoForm::Zero();
    for (int c = 0; c < 4; ++c) along += v[c] * DPhi[c];
    const TwoForm r = pkg.apply_wplus(psi) - 0.5 * commutator(psi, Phi, pkg.metric, g_inv) -
                      along / j.norm_sq;
    out.gau1 = std::max(out.gau1, std::sqrt(std::max(0.0, norm2_sq(r, g_inv))));
  }
  return out;
}

}  // namespace sdeh
