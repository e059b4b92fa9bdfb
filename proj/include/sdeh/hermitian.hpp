#pragma once

// The positive Hermitian structure of an Einstein metric with degenerate W+,
// its conformal scalar curvature, Lee form and Killing field.

#include <optional>

#include "sdeh/chart.hpp"
#include "sdeh/curvature.hpp"

namespace sdeh {

struct HermitianData {
  TwoForm F;      // Kaehler form, |F|^2 = 2
  Matrix4 J;      // J = -g^{-1} F, so F(X, Y) = g(JX, Y)
  double kappa = 0.0;
  double simple_eigenvalue = 0.0;
  double degeneracy_gap = 0.0;
};

// F is the generator of the simple eigenspace of W+. With a reference form
// the sign is chosen to agree with it; otherwise the eigenvector sign rule
// decides.
HermitianData extract_hermitian(const CurvaturePackage& pkg,
                                const std::optional<TwoForm>& reference = std::nullopt);

// Point-wise extraction over a chart with the sign of F tied to the value at
// an anchor point, so that stencils see a continuous field.
class HermitianField {
 public:
  HermitianField(const MetricChart& chart, const Point& anchor);

  const MetricChart& chart() const { return *chart_; }
  HermitianData at(const Point& p) const;
  double kappa(const Point& p) const { return at(p).kappa; }

 private:
  const MetricChart* chart_;
  TwoForm reference_;
};

struct LeeForms {
  OneForm codifferential;  // -1/2 J delta F
  OneForm from_kappa;      // 1/3 d ln|kappa|
  double difference = 0.0;  // |route A - route B|_g
};

LeeForms lee_form(const HermitianField& field, const Point& p);

// theta = 1/3 d ln|kappa| as a field (one stencil per evaluation).
OneForm lee_form_from_kappa(const HermitianField& field, const Point& p);

struct KillingCheck {
  Eigen::Vector4d K;       // J grad(kappa^{-1/3})
  double residual = 0.0;   // |D_a K_b + D_b K_a| in an orthonormal frame
  double gradient_norm = 0.0;  // |D K|, for scale
  // |cos| of the angle between K and each analytic Killing candidate.
  std::vector<double> candidate_alignment;
};

Eigen::Vector4d killing_field(const HermitianField& field, const Point& p);
KillingCheck killing_residual(const HermitianField& field, const Point& p);

using EndomorphismField = std::function<Matrix4(const Point&)>;

struct NijenhuisCheck {
  double nijenhuis = 0.0;   // sum over frame pairs of |N(e_A, e_B)|
  double integrable = 0.0;  // sum over frame vectors of |D_X J - [X ^ theta, J]|
};

// Nijenhuis tensor of an arbitrary almost-complex field by stencils.
double nijenhuis_norm(const MetricChart& chart, const EndomorphismField& J, const Point& p);

NijenhuisCheck nijenhuis_check(const HermitianField& field, const Point& p, const OneForm& theta);

// J' = -g^{-1}(cos u F + sin u psi) with psi a unit self-dual form orthogonal
// to F and u the coordinate sum: orthogonal and positive but not integrable.
EndomorphismField rotated_structure(const HermitianField& field, const Point& anchor);

struct KappaRelations {
  double scalar_relation = 0.0;  // kappa - s - 6 (delta theta - |theta|^2)
  double eigenvalue_formula = 0.0;  // max |lambda_{+,0,-} - formula|
  double dtheta_plus_F = 0.0;    // (d theta+, F)
  double dtheta_plus = 0.0;      // |d theta+|
};

KappaRelations kappa_relations_check(const HermitianField& field, const Point& p);

}  // namespace sdeh
