#include "sdeh/curvature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace sdeh {

Matrix4 orthonormal_coframe(const Matrix4& g, int orientation) {
  Eigen::LLT<Matrix4> llt(g);
  if (llt.info() != Eigen::Success) throw SingularMetricError("metric is not positive definite");
  Matrix4 coframe = llt.matrixL().transpose();
  if (orientation < 0) coframe.row(3) *= -1.0;
  return coframe;
}

namespace {

Rank4 contract_frame(const Rank4& t, const Matrix4& frame) {
  // Transform each index in turn: T'_{...a...} = T_{...i...} f^i_a
  Rank4 cur = t;
  for (int slot = 0; slot < 4; ++slot) {
    Rank4 next;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            double acc = 0.0;
            for (int i = 0; i < 4; ++i) {
              std::array<int, 4> idx{a, b, c, d};
              const int target = idx[slot];
              idx[slot] = i;
              acc += cur(idx[0], idx[1], idx[2], idx[3]) * frame(i, target);
            }
            next(a, b, c, d) = acc;
          }
    cur = next;
  }
  return cur;
}

// 1/8 sum A_ij R_ijkl B_kl in frame components.
double pair_form(const TwoForm& a, const Rank4& rf, const TwoForm& b) {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (a(i, j) == 0.0) continue;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) acc += a(i, j) * rf(i, j, k, l) * b(k, l);
    }
  return acc / 8.0;
}

}  // namespace

CurvaturePackage curvature_from_jets(const MetricJets& gj, const Point& p, int orientation) {
  CurvaturePackage pkg;
  pkg.point = p;
  pkg.orientation = orientation;
  pkg.metric = values(gj);
  pkg.coframe = orthonormal_coframe(pkg.metric, orientation);
  pkg.frame = pkg.coframe.inverse();
  pkg.metric_inv = pkg.frame * pkg.frame.transpose();
  const Matrix4& gi = pkg.metric_inv;

  // dg(k, i, j) = d_k g_ij ; ddg(k, l, i, j) = d_k d_l g_ij
  Christoffel dg;
  Rank4 ddg;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        dg(k, i, j) = gj(i, j).grad(k);
        for (int l = 0; l < 4; ++l) ddg(k, l, i, j) = gj(i, j).hess(k, l);
      }

  // Gamma_{d,bc} and its derivatives.
  Christoffel gamma_low;
  Rank4 dgamma_low;  // (e, d, b, c)
  for (int d = 0; d < 4; ++d)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        gamma_low(d, b, c) = 0.5 * (dg(b, d, c) + dg(c, d, b) - dg(d, b, c));
        for (int e = 0; e < 4; ++e)
          dgamma_low(e, d, b, c) = 0.5 * (ddg(e, b, d, c) + ddg(e, c, d, b) - ddg(e, d, b, c));
      }

  // d_e g^{ad} = -g^{af} d_e g_fh g^{hd}
  Christoffel dginv;
  for (int e = 0; e < 4; ++e) {
    Matrix4 dge;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dge(i, j) = dg(e, i, j);
    const Matrix4 m = -gi * dge * gi;
    for (int a = 0; a < 4; ++a)
      for (int d = 0; d < 4; ++d) dginv(e, a, d) = m(a, d);
  }

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int d = 0; d < 4; ++d) acc += gi(a, d) * gamma_low(d, b, c);
        pkg.gamma(a, b, c) = acc;
        for (int e = 0; e < 4; ++e) {
          double dacc = 0.0;
          for (int d = 0; d < 4; ++d)
            dacc += dginv(e, a, d) * gamma_low(d, b, c) + gi(a, d) * dgamma_low(e, d, b, c);
          pkg.dgamma(e, a, b, c) = dacc;
        }
      }

  // R^a_{bcd} = d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb
  Rank4 rup;
  const auto& G = pkg.gamma;
  const auto& dG = pkg.dgamma;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = dG(c, a, d, b) - dG(d, a, c, b);
          for (int e = 0; e < 4; ++e) v += G(a, c, e) * G(e, d, b) - G(a, d, e) * G(e, c, b);
          rup(a, b, c, d) = v;
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.0;
          for (int e = 0; e < 4; ++e) v += pkg.metric(a, e) * rup(e, b, c, d);
          pkg.riemann(a, b, c, d) = v;
        }

  pkg.ricci.setZero();
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a) v += rup(a, b, a, d);
      pkg.ricci(b, d) = v;
    }
  pkg.ricci = 0.5 * (pkg.ricci + pkg.ricci.transpose()).eval();
  pkg.scalar = (gi.cwiseProduct(pkg.ricci)).sum();

  std::tie(pkg.lambda_plus, pkg.lambda_minus) = lambda_bases(pkg.coframe);

  const Rank4 rf = pkg.riemann_frame();
  std::array<TwoForm, 6> basis;
  for (int i = 0; i < 3; ++i) {
    basis[i] = frame_lambda_plus()[i];
    basis[i + 3] = frame_lambda_minus()[i];
  }
  for (int A = 0; A < 6; ++A)
    for (int B = A; B < 6; ++B) {
      const double v = pair_form(basis[A], rf, basis[B]);
      pkg.curv_op(A, B) = v;
      pkg.curv_op(B, A) = v;
    }

  const double s12 = pkg.scalar / 12.0;
  pkg.wplus = pkg.curv_op.topLeftCorner<3, 3>() - s12 * Matrix3::Identity();
  pkg.wminus = pkg.curv_op.bottomRightCorner<3, 3>() - s12 * Matrix3::Identity();

  // Ric0~(w) = Ric0 w + w Ric0, computed from the Ricci tensor alone.
  const Matrix4 r0 = pkg.ricci0_frame();
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B) {
      const TwoForm image = r0 * frame_lambda_minus()[B] + frame_lambda_minus()[B] * r0;
      pkg.ric0_block(A, B) = 0.25 * frame_lambda_plus()[A].cwiseProduct(image).sum();
    }
  return pkg;
}

CurvaturePackage curvature_package(const MetricChart& chart, const Point& p) {
  chart.require_domain(p);
  return curvature_from_jets(chart.metric_jets(p), p, chart.orientation(p));
}

Rank4 CurvaturePackage::riemann_frame() const { return contract_frame(riemann, frame); }

Matrix4 CurvaturePackage::ricci0_frame() const {
  const Matrix4 r0 = ricci - 0.25 * scalar * metric;
  return frame.transpose() * r0 * frame;
}

TwoForm CurvaturePackage::apply_curvature(const TwoForm& w) const {
  // Expand on the orthogonal basis (norm^2 = 2), apply curv_op, reassemble.
  Eigen::Matrix<double, 6, 1> c;
  for (int i = 0; i < 3; ++i) {
    c[i] = inner2(lambda_plus[i], w, metric_inv) / 2.0;
    c[i + 3] = inner2(lambda_minus[i], w, metric_inv) / 2.0;
  }
  const Eigen::Matrix<double, 6, 1> out = curv_op * c;
  TwoForm r = TwoForm::Zero();
  for (int i = 0; i < 3; ++i) r += out[i] * lambda_plus[i] + out[i + 3] * lambda_minus[i];
  return r;
}

TwoForm CurvaturePackage::apply_wplus(const TwoForm& w) const {
  Eigen::Vector3d c;
  for (int i = 0; i < 3; ++i) c[i] = inner2(lambda_plus[i], w, metric_inv) / 2.0;
  const Eigen::Vector3d out = wplus * c;
  TwoForm r = TwoForm::Zero();
  for (int i = 0; i < 3; ++i) r += out[i] * lambda_plus[i];
  return r;
}

PackageInvariants check_invariants(const CurvaturePackage& pkg) {
  PackageInvariants inv;
  const Rank4& R = pkg.riemann;
  inv.scale = R.max_abs();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          inv.antisymmetry = std::max({inv.antisymmetry, std::abs(R(a, b, c, d) + R(b, a, c, d)),
                                       std::abs(R(a, b, c, d) + R(a, b, d, c))});
          inv.pair_symmetry = std::max(inv.pair_symmetry, std::abs(R(a, b, c, d) - R(c, d, a, b)));
          inv.first_bianchi = std::max(
              inv.first_bianchi, std::abs(R(a, b, c, d) + R(a, c, d, b) + R(a, d, b, c)));
        }
  inv.wplus_trace = std::abs(pkg.wplus.trace());
  inv.wminus_trace = std::abs(pkg.wminus.trace());

  Matrix6 rebuilt = Matrix6::Zero();
  rebuilt.topLeftCorner<3, 3>() = pkg.wplus + pkg.scalar / 12.0 * Matrix3::Identity();
  rebuilt.bottomRightCorner<3, 3>() = pkg.wminus + pkg.scalar / 12.0 * Matrix3::Identity();
  rebuilt.topRightCorner<3, 3>() = 0.5 * pkg.ric0_block;
  rebuilt.bottomLeftCorner<3, 3>() = 0.5 * pkg.ric0_block.transpose();
  inv.reassembly = (rebuilt - pkg.curv_op).cwiseAbs().maxCoeff();
  return inv;
}

WPlusSpectrum wplus_spectrum(const CurvaturePackage& pkg) {
  WPlusSpectrum out;
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(pkg.wplus);
  const Eigen::Vector3d ev = solver.eigenvalues();  // ascending
  const Matrix3 vecs = solver.eigenvectors();
  for (int i = 0; i < 3; ++i) {
    out.eigenvalues[i] = ev[2 - i];
    Eigen::Vector3d v = vecs.col(2 - i);
    for (int k = 0; k < 3; ++k) {
      if (std::abs(v[k]) > 1e-12) {
        if (v[k] < 0) v = -v;
        break;
      }
    }
    out.eigenvectors.col(i) = v;
  }

  // Below this spread W+ is numerically zero relative to the full curvature.
  const double scale = 1.0 + pkg.curv_op.cwiseAbs().maxCoeff();
  const double spread = out.eigenvalues[0] - out.eigenvalues[2];
  if (spread <= 1e-11 * scale) {
    out.eigenvalues.setZero();
    out.degeneracy_gap = 0.0;
    out.vanishing = true;
  } else {
    out.vanishing = false;
    out.degeneracy_gap =
        std::min(out.eigenvalues[0] - out.eigenvalues[1], out.eigenvalues[1] - out.eigenvalues[2]) /
        spread;
  }
  for (int i = 0; i < 3; ++i) {
    TwoForm f = TwoForm::Zero();
    for (int k = 0; k < 3; ++k) f += out.eigenvectors(k, i) * pkg.lambda_plus[k];
    out.eigenforms[i] = f;
  }
  return out;
}

std::vector<TwoForm> wplus_roots(const WPlusSpectrum& spectrum) {
  const double lp = spectrum.eigenvalues[0];
  const double l0 = spectrum.eigenvalues[1];
  const double lm = spectrum.eigenvalues[2];
  const double spread = lp - lm;
  if (spectrum.vanishing || !(spread > 0.0))
    throw PreconditionError("W+ roots undefined: lambda+ == lambda-");
  const double cm = std::sqrt(std::max(0.0, (lp - l0) / spread));
  const double cp = std::sqrt(std::max(0.0, (l0 - lm) / spread));
  const TwoForm& f_plus = spectrum.eigenforms[0];
  const TwoForm& f_minus = spectrum.eigenforms[2];

  std::vector<TwoForm> roots;
  const TwoForm r1 = cm * f_minus + cp * f_plus;
  roots.push_back(r1);
  roots.push_back(-r1);
  if (spectrum.degeneracy_gap > kDegeneracyTolerance) {
    const TwoForm r2 = cm * f_minus - cp * f_plus;
    roots.push_back(r2);
    roots.push_back(-r2);
  }
  return roots;
}

}  // namespace sdeh
