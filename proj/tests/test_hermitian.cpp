#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "sdeh/catalog.hpp"
#include "sdeh/curvature.hpp"
#include "sdeh/forms.hpp"
#include "sdeh/hermitian.hpp"
#include "support.hpp"

using namespace sdeh;

namespace {

const CanonicParams kReference{0.0, -695.0 / 576.0, 1.0};

void check_hermitian_algebra(const CurvaturePackage& pkg, const HermitianData& hd) {
  const Matrix4& g = pkg.metric;
  CHECK((hd.J * hd.J + Matrix4::Identity()).norm() < 1e-10);
  CHECK((hd.J.transpose() * g * hd.J - g).norm() < 1e-10 * g.norm());
  CHECK(norm2_sq(hd.F, pkg.metric_inv) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK((hodge_star2(hd.F, pkg.coframe) - hd.F).norm() < 1e-10 * hd.F.norm());
  // F(X, Y) = g(JX, Y)
  CHECK((hd.F - (g * hd.J).transpose()).norm() < 1e-10 * hd.F.norm());
  CHECK(std::abs(hd.kappa - 6.0 * hd.simple_eigenvalue) < 1e-9 * std::max(1.0, std::abs(hd.kappa)));
}

}  // namespace

TEST_CASE("Fubini-Study is Kaehler with kappa = s") {
  const MetricChart fs = space_form_chart(SpaceForm::kFubiniStudy);
  const Point anchor(0.2, -0.1, 0.3, 0.1);
  const HermitianField field(fs, anchor);
  for (const Point& p : testing::random_points(1, 5, Point::Constant(-0.5), Point::Constant(0.5))) {
    const CurvaturePackage pkg = curvature_package(fs, p);
    const HermitianData hd = field.at(p);
    check_hermitian_algebra(pkg, hd);
    CHECK(hd.kappa == doctest::Approx(24.0).epsilon(1e-10));
    const LeeForms lee = lee_form(field, p);
    CHECK(lee.codifferential.norm() < 1e-8);
    CHECK(lee.from_kappa.norm() < 1e-8);
    CHECK(nijenhuis_check(field, p, lee.from_kappa).nijenhuis < 1e-8);
  }
}

TEST_CASE("canonic chart: extracted structure matches the analytic candidates") {
  const MetricChart chart = canonic_chart(kReference);
  const Point anchor(1.0, 1.0, 0.0, 0.0);
  const HermitianField field(chart, anchor);
  const TwoForm F0 = field.at(anchor).F;
  for (const Point& p : testing::random_points(2, 6, Point(0.92, 0.92, -0.5, -0.5), Point(1.08, 1.08, 0.5, 0.5))) {
    const CurvaturePackage pkg = curvature_package(chart, p);
    const HermitianData hd = field.at(p);
    check_hermitian_algebra(pkg, hd);
    const double k = p[0] * p[0] * p[0];
    CHECK(std::abs(hd.kappa - k) < 1e-12 * k);
    // Sign carried continuously from the anchor.
    CHECK(inner2(hd.F, F0, pkg.metric_inv) > 0.0);
    const TwoForm cand = chart.hermitian_candidate(p);
    CHECK(std::min((hd.F - cand).norm(), (hd.F + cand).norm()) < 1e-10);

    const LeeForms lee = lee_form(field, p);
    CHECK(lee.difference < 1e-8);
    CHECK((lee.from_kappa - chart.lee_candidate(p)).norm() < 1e-8);

    const KillingCheck kc = killing_residual(field, p);
    CHECK(kc.residual < 1e-6 * std::max(1.0, kc.gradient_norm));
    CHECK(kc.K.norm() > 1e-3);

    const NijenhuisCheck nc = nijenhuis_check(field, p, lee.from_kappa);
    CHECK(nc.nijenhuis < 1e-7);
    CHECK(nc.integrable < 1e-7);

    const KappaRelations kr = kappa_relations_check(field, p);
    CHECK(std::abs(kr.scalar_relation) < 1e-5);
    CHECK(kr.eigenvalue_formula < 1e-6);
    CHECK(std::abs(kr.dtheta_plus_F) < 1e-6);
    CHECK(kr.dtheta_plus < 1e-6);
  }
}

TEST_CASE("the Killing field lies in the span of the analytic Killing fields") {
  const MetricChart chart = canonic_chart(kReference);
  const Point p(1.02, 0.97, 0.2, -0.3);
  const HermitianField field(chart, p);
  const Eigen::Vector4d K = killing_field(field, p);
  Eigen::Matrix<double, 4, 2> span;
  span.col(0) = chart.killing_candidates[0](p);
  span.col(1) = chart.killing_candidates[1](p);
  const Eigen::Vector2d coef = span.colPivHouseholderQr().solve(K);
  CHECK((span * coef - K).norm() < 1e-7 * K.norm());
}

TEST_CASE("a rotated almost-complex structure is not integrable") {
  const MetricChart chart = canonic_chart(kReference);
  const Point p(1.0, 1.0, 0.0, 0.0);
  const HermitianField field(chart, p);
  const EndomorphismField rotated = rotated_structure(field, p);
  const CurvaturePackage pkg = curvature_package(chart, p);
  const Matrix4 Jr = rotated(p);
  CHECK((Jr * Jr + Matrix4::Identity()).norm() < 1e-10);
  CHECK((Jr.transpose() * pkg.metric * Jr - pkg.metric).norm() < 1e-10);
  CHECK(nijenhuis_norm(chart, rotated, p) > 1e-2);
  CHECK(nijenhuis_norm(chart, [&](const Point& q) { return field.at(q).J; }, p) < 1e-7);
}

TEST_CASE("the integrability formula fails for the opposite sign of theta") {
  const MetricChart chart = lebrun_pedersen_chart({1.0, 2.0});
  const Point p(1.5, 1.2, 0.3, 0.4);
  const HermitianField field(chart, p);
  const OneForm theta = lee_form_from_kappa(field, p);
  const double scale = std::max(1.0, theta.norm());
  CHECK(nijenhuis_check(field, p, theta).integrable < 1e-6 * scale);
  CHECK(nijenhuis_check(field, p, -theta).integrable > 1e-2);
}

TEST_CASE("extraction preconditions") {
  const MetricChart flat = space_form_chart(SpaceForm::kFlat);
  CHECK_THROWS_AS(extract_hermitian(curvature_package(flat, Point::Zero())), PreconditionError);
  const CurvaturePackage generic = curvature_package(testing::generic_chart(4, 0.4), Point(0.1, 0.2, -0.1, 0.0));
  CHECK_THROWS_AS(extract_hermitian(generic), PreconditionError);
  const MetricChart sphere = space_form_chart(SpaceForm::kSphere);
  CHECK_THROWS_AS(HermitianField(sphere, Point::Zero()), PreconditionError);
}
