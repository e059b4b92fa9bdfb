#pragma once

// Einstein-Weyl and hyperhermitian identities for self-dual Einstein
// Hermitian metrics carrying non-closed negative hyperhermitian structures.
//
// Normalization: the metric is rescaled by a constant so that the harmonic
// self-dual form Phi = d theta' equals 1/2 lambda^{2/3} F, where lambda is
// the simple eigenvalue of W+ (kappa = 6 lambda). Real cube roots are used,
// so lambda may be negative.

#include <functional>
#include <memory>
#include <vector>

#include "sdeh/hermitian.hpp"

namespace sdeh {

struct WeylLeeData {
  double lambda = 0.0;
  double cube_root = 0.0;  // lambda^{1/3}, sign preserving
  OneForm theta_J;         // d lambda / (3 lambda)
  OneForm j_theta_J;
  OneForm theta_prime;
  OneForm theta_second;
  TwoForm F;
  TwoForm Phi;  // 1/2 lambda^{2/3} F, the curvature of theta'
  Matrix4 J;
};

// Algebraic step: the two Lee forms from theta_J and the Hermitian data.
WeylLeeData hyper_lee_forms(const HermitianData& hd, const OneForm& theta_J);

// Positive metric factors c for which c g satisfies
// |theta_J|^2 = -(lambda^{1/3}/2 + s/12)(1 + lambda^{2/3}) in the scaled
// metric, given lambda, s and |theta_J|^2 of the unscaled metric.
std::vector<double> rescale_candidates(double lambda, double scalar, double theta_j_sq);

enum class Branch { kPrime, kSecond };

// Lee-form fields of the rescaled chart.
class HyperhermitianField {
 public:
  // Chooses the rescale factor at the anchor (the candidate for which
  // d theta' is closest to Phi there) and keeps the rescaled chart.
  HyperhermitianField(const MetricChart& chart, const Point& anchor);

  const MetricChart& chart() const { return *scaled_; }
  double scale_factor() const { return factor_; }

  WeylLeeData at(const Point& p) const;
  OneForm theta(const Point& p, Branch b) const;
  // d theta for either branch equals +Phi (theta') or -Phi (theta'').
  TwoForm phi(const Point& p, Branch b) const;

 private:
  std::shared_ptr<const MetricChart> scaled_;
  std::shared_ptr<const HermitianField> hermitian_;
  double factor_ = 1.0;
};

using OneFormField = std::function<OneForm(const Point&)>;

// Frame norm of D theta - theta.theta + 1/4 (delta theta + |theta|^2) g
//               - 1/2 d theta - 1/2 Ric0.
double einstein_weyl_residual(const MetricChart& chart, const OneFormField& theta, const Point& p);

// |s - 6 (-delta theta + |theta|^2)|
double scalar_flat_residual(const MetricChart& chart, const OneFormField& theta, const Point& p);

// |(d theta)-|
double anti_self_dual_curvature(const MetricChart& chart, const OneFormField& theta, const Point& p);

// Frame norm of
//   D theta_J - (1 + l^{2/3})(s + 3 l^{1/3})/12 g
//     - (1 + 2 l^{2/3})/(1 + l^{2/3}) theta_J.theta_J
//     - l^{2/3}/(1 + l^{2/3}) J theta_J . J theta_J.
double gau5_residual(const HermitianField& field, const Point& p);

struct PhiIdentities {
  double closure = 0.0;  // |d theta - Phi|
  double gau2 = 0.0;     // |d|theta|^2 - (s/12 + |theta|^2) theta + Phi(theta)|
  double util4 = 0.0;    // ||Phi|^2 + lambda (s/12 + |theta|^2)|
  double util6 = 0.0;    // ||D Phi|^2 + (|Phi|^2/lambda + s/12)(6|Phi|^2 + 3 lambda^2)|
  double gau1 = 0.0;     // max over Lambda+ basis of |W+(psi) - 1/2 [psi, Phi] - D_{psi(theta)} Phi / |theta|^2|
};

PhiIdentities phi_identity_residuals(const HyperhermitianField& field, const Point& p, Branch b);

}  // namespace sdeh
