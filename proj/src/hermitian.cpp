#include "sdeh/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "sdeh/errors.hpp"
#include "sdeh/stencil.hpp"

namespace sdeh {

HermitianData extract_hermitian(const CurvaturePackage& pkg, const std::optional<TwoForm>& reference) {
  const WPlusSpectrum sp = wplus_spectrum(pkg);
  if (sp.vanishing) throw PreconditionError("W+ vanishes: no Hermitian structure is determined");
  if (sp.degeneracy_gap > kDegeneracyTolerance)
    throw PreconditionError("W+ is not degenerate (gap " + std::to_string(sp.degeneracy_gap) + ")");
  const Eigen::Vector3d& ev = sp.eigenvalues;
  const int simple = (ev[0] - ev[1]) > (ev[1] - ev[2]) ? 0 : 2;

  HermitianData hd;
  hd.F = sp.eigenforms[simple];
  if (reference && inner2(hd.F, *reference, pkg.metric_inv) < 0.0) hd.F = -hd.F;
  hd.J = endomorphism(hd.F, pkg.metric_inv);
  hd.simple_eigenvalue = ev[simple];
  // Trace formula rather than the sorted eigenvalue: smooth near degeneracy.
  hd.kappa = 3.0 * inner2(pkg.apply_wplus(hd.F), hd.F, pkg.metric_inv);
  hd.degeneracy_gap = sp.degeneracy_gap;
  return hd;
}

HermitianField::HermitianField(const MetricChart& chart, const Point& anchor) : chart_(&chart) {
  reference_ = extract_hermitian(curvature_package(chart, anchor)).F;
}

HermitianData HermitianField::at(const Point& p) const {
  return extract_hermitian(curvature_package(*chart_, p), reference_);
}

// ---------------------------------------------------------------------------

OneForm lee_form_from_kappa(const HermitianField& field, const Point& p) {
  auto log_kappa = [&](const Point& q) { return std::log(std::abs(field.kappa(q))); };
  return stencil_differential(field.chart(), log_kappa, p) / 3.0;
}

LeeForms lee_form(const HermitianField& field, const Point& p) {
  const MetricChart& chart = field.chart();
  const CurvaturePackage pkg = curvature_package(chart, p);
  const HermitianData hd = field.at(p);
  if (std::abs(hd.kappa) < 1e-300) throw PreconditionError("kappa vanishes");

  auto F = [&](const Point& q) { return field.at(q).F; };
  const auto dF = covariant_2form(pkg.gamma, hd.F, partials(chart, F, p));
  const OneForm deltaF = codifferential_2form(pkg.metric_inv, dF);

  LeeForms out;
  out.codifferential = -0.5 * apply_j(hd.J, deltaF);
  out.from_kappa = lee_form_from_kappa(field, p);
  const OneForm diff = out.codifferential - out.from_kappa;
  out.difference = std::sqrt(std::max(0.0, inner1(diff, diff, pkg.metric_inv)));
  return out;
}

// ---------------------------------------------------------------------------

Eigen::Vector4d killing_field(const HermitianField& field, const Point& p) {
  const MetricChart& chart = field.chart();
  auto potential = [&](const Point& q) { return 1.0 / std::cbrt(field.kappa(q)); };
  const OneForm df = stencil_differential(chart, potential, p);
  const Matrix4 g_inv = chart.metric_value(p).inverse();
  return field.at(p).J * (g_inv * df);
}

KillingCheck killing_residual(const HermitianField& field, const Point& p) {
  const MetricChart& chart = field.chart();
  const CurvaturePackage pkg = curvature_package(chart, p);
  auto lowered = [&](const Point& q) -> OneForm {
    return chart.metric_value(q) * killing_field(field, q);
  };
  const OneForm k = lowered(p);
  const Matrix4 dk = covariant_1form(pkg.gamma, k, partials(chart, lowered, p));

  KillingCheck out;
  out.K = pkg.metric_inv * k;
  out.residual = frame_components(dk + dk.transpose(), pkg.frame).norm();
  out.gradient_norm = frame_components(dk, pkg.frame).norm();
  const double kn = std::sqrt(out.K.dot(pkg.metric * out.K));
  for (const auto& cand : chart.killing_candidates) {
    const Eigen::Vector4d c = cand(p);
    const double cn = std::sqrt(c.dot(pkg.metric * c));
    out.candidate_alignment.push_back(std::abs(out.K.dot(pkg.metric * c)) / (kn * cn));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// N^a_bc = J^d_b d_d J^a_c - J^d_c d_d J^a_b - J^a_d (d_b J^d_c - d_c J^d_b)
double nijenhuis_frame_norm(const Matrix4& J, const std::array<Matrix4, 4>& dJ,
                            const CurvaturePackage& pkg) {
  double total = 0.0;
  for (int A = 0; A < 4; ++A)
    for (int B = A + 1; B < 4; ++B) {
      const Eigen::Vector4d X = pkg.frame.col(A);
      const Eigen::Vector4d Y = pkg.frame.col(B);
      Eigen::Vector4d n = Eigen::Vector4d::Zero();
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c) {
            double v = 0.0;
            for (int d = 0; d < 4; ++d)
              v += J(d, b) * dJ[d](a, c) - J(d, c) * dJ[d](a, b) -
                   J(a, d) * (dJ[b](d, c) - dJ[c](d, b));
            n[a] += v * X[b] * Y[c];
          }
      total += std::sqrt(std::max(0.0, n.dot(pkg.metric * n)));
    }
  return total;
}

}  // namespace

double nijenhuis_norm(const MetricChart& chart, const EndomorphismField& J, const Point& p) {
  const CurvaturePackage pkg = curvature_package(chart, p);
  return nijenhuis_frame_norm(J(p), partials(chart, J, p), pkg);
}

NijenhuisCheck nijenhuis_check(const HermitianField& field, const Point& p, const OneForm& theta) {
  const MetricChart& chart = field.chart();
  const CurvaturePackage pkg = curvature_package(chart, p);
  auto Jf = [&](const Point& q) { return field.at(q).J; };
  const Matrix4 J = Jf(p);
  const auto dJ = partials(chart, Jf, p);

  NijenhuisCheck out;
  out.nijenhuis = nijenhuis_frame_norm(J, dJ, pkg);

  // D_X J = [X ^ theta, J] for X running over the orthonormal frame.
  const auto DJ = covariant_endomorphism(pkg.gamma, J, dJ);
  for (int A = 0; A < 4; ++A) {
    const Eigen::Vector4d X = pkg.frame.col(A);
    Matrix4 lhs = Matrix4::Zero();
    for (int c = 0; c < 4; ++c) lhs += X[c] * DJ[c];
    const Matrix4 xt = endomorphism(wedge(pkg.metric * X, theta), pkg.metric_inv);
    const Matrix4 rhs = xt * J - J * xt;
    out.integrable += (pkg.coframe * (lhs - rhs) * pkg.frame).norm();
  }
  return out;
}

EndomorphismField rotated_structure(const HermitianField& field, const Point& anchor) {
  const CurvaturePackage pkg = curvature_package(field.chart(), anchor);
  const TwoForm F0 = field.at(anchor).F;
  int pick = 0;
  double best = 1e300;
  for (int k = 0; k < 3; ++k) {
    const double overlap = std::abs(inner2(pkg.lambda_plus[k], F0, pkg.metric_inv));
    if (overlap < best) {
      best = overlap;
      pick = k;
    }
  }
  return [&field, pick](const Point& q) -> Matrix4 {
    const CurvaturePackage local = curvature_package(field.chart(), q);
    const TwoForm F = field.at(q).F;
    TwoForm psi = local.lambda_plus[pick];
    psi -= 0.5 * inner2(psi, F, local.metric_inv) * F;
    psi *= std::sqrt(2.0 / norm2_sq(psi, local.metric_inv));
    const double u = q.sum();
    return endomorphism(std::cos(u) * F + std::sin(u) * psi, local.metric_inv);
  };
}

// ---------------------------------------------------------------------------

KappaRelations kappa_relations_check(const HermitianField& field, const Point& p) {
  const MetricChart& chart = field.chart();
  const CurvaturePackage pkg = curvature_package(chart, p);
  const HermitianData hd = field.at(p);
  auto theta_field = [&](const Point& q) { return lee_form_from_kappa(field, q); };
  const OneForm theta = theta_field(p);
  const auto d_theta = partials(chart, theta_field, p);
  const Matrix4 Dtheta = covariant_1form(pkg.gamma, theta, d_theta);
  const double delta_theta = codifferential_1form(pkg.metric_inv, Dtheta);
  const double theta_sq = inner1(theta, theta, pkg.metric_inv);

  KappaRelations out;
  out.scalar_relation = std::abs(hd.kappa - pkg.scalar - 6.0 * (delta_theta - theta_sq));

  const TwoForm dtheta = exterior_derivative(d_theta);
  const TwoForm plus = self_dual_part(dtheta, pkg.coframe);
  const double plus_sq = norm2_sq(plus, pkg.metric_inv);
  out.dtheta_plus = std::sqrt(std::max(0.0, plus_sq));
  out.dtheta_plus_F = std::abs(inner2(plus, hd.F, pkg.metric_inv));

  const double root = std::sqrt(hd.kappa * hd.kappa + 32.0 * plus_sq) / 8.0;
  Eigen::Vector3d formula(hd.kappa / 24.0 + root, -hd.kappa / 12.0, hd.kappa / 24.0 - root);
  std::sort(formula.data(), formula.data() + 3, std::greater<double>());
  out.eigenvalue_formula = (wplus_spectrum(pkg).eigenvalues - formula).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace sdeh
