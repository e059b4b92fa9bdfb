#pragma once

// Levi-Civita curvature of a chart at a point, and its decomposition on
// 2-forms into scalar, trace-free Ricci and self-dual / anti-self-dual Weyl
// blocks.
//
// Sign convention: R(X,Y)Z = D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z and
// R_abcd = g(R(d_c, d_d) d_b, d_a), so the round unit sphere has
// R_abcd = g_ac g_bd - g_ad g_bc and scalar curvature +12. The curvature
// operator acts on 2-forms by R(w)_ab = 1/2 R_abcd w^cd and is the identity
// on the unit sphere.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "sdeh/chart.hpp"
#include "sdeh/forms.hpp"

namespace sdeh {

// Dense rank-n tensor over four indices, row-major.
template <int Rank>
class Tensor4 {
 public:
  static constexpr int kSize = Rank == 3 ? 64 : 256;

  Tensor4() { data_.fill(0.0); }

  template <typename... I>
  double& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <typename... I>
  double operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  template <typename... I>
  static int offset(I... idx) {
    static_assert(sizeof...(I) == Rank);
    int o = 0;
    ((o = o * 4 + static_cast<int>(idx)), ...);
    return o;
  }
  std::array<double, kSize> data_;
};

using Christoffel = Tensor4<3>;  // gamma(a, b, c) = Gamma^a_{bc}
using Rank4 = Tensor4<4>;

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix3 = Eigen::Matrix3d;

struct CurvaturePackage {
  Point point;
  int orientation = 1;
  Matrix4 metric;
  Matrix4 metric_inv;

  Christoffel gamma;
  Rank4 dgamma;   // dgamma(d, a, b, c) = d_d Gamma^a_{bc}
  Rank4 riemann;  // fully covariant R_abcd, coordinate components
  Matrix4 ricci;
  double scalar = 0.0;

  Matrix4 coframe;  // rows e^a
  Matrix4 frame;    // columns e_a
  TwoFormBasis lambda_plus;
  TwoFormBasis lambda_minus;

  Matrix6 curv_op;      // basis order (Lambda+, Lambda-)
  Matrix3 wplus;
  Matrix3 wminus;
  Matrix3 ric0_block;   // matrix of Ric0~ : Lambda- -> Lambda+

  Rank4 riemann_frame() const;
  Matrix4 ricci0_frame() const;
  double ric0_norm() const { return ricci0_frame().norm(); }
  double wplus_norm() const { return wplus.norm(); }
  double wminus_norm() const { return wminus.norm(); }

  // Curvature operator applied to a coordinate 2-form.
  TwoForm apply_curvature(const TwoForm& w) const;
  // W+ applied to a coordinate 2-form (zero on Lambda-).
  TwoForm apply_wplus(const TwoForm& w) const;
};

// Residuals of the algebraic identities every package must satisfy.
struct PackageInvariants {
  double antisymmetry = 0.0;    // R_abcd + R_bacd, R_abcd + R_abdc
  double pair_symmetry = 0.0;   // R_abcd - R_cdab
  double first_bianchi = 0.0;   // R_a[bcd]
  double wplus_trace = 0.0;
  double wminus_trace = 0.0;
  double reassembly = 0.0;      // curv_op - (s/12 Id + 1/2 Ric0~ + W+ + W-)
  double scale = 0.0;           // max |R_abcd|, for relative comparisons
};

Matrix4 orthonormal_coframe(const Matrix4& g, int orientation);

CurvaturePackage curvature_from_jets(const MetricJets& g, const Point& p, int orientation);
CurvaturePackage curvature_package(const MetricChart& chart, const Point& p);

PackageInvariants check_invariants(const CurvaturePackage& pkg);

// Spectrum of W+, sorted descending, with eigenforms of squared norm 2.
struct WPlusSpectrum {
  Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();  // lambda+ >= lambda0 >= lambda-
  Matrix3 eigenvectors = Matrix3::Identity();             // columns, Lambda+ basis coefficients
  TwoFormBasis eigenforms{};                              // coordinate components
  double degeneracy_gap = 0.0;
  bool vanishing = true;
};

WPlusSpectrum wplus_spectrum(const CurvaturePackage& pkg);

// Relative gap at or below which W+ counts as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-6;

// Roots of W+ from the spectral formula; one pair of opposite roots when the
// spectrum is degenerate, two pairs otherwise.
std::vector<TwoForm> wplus_roots(const WPlusSpectrum& spectrum);

}  // namespace sdeh
