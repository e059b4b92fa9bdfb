#pragma once

// Linear algebra of 1- and 2-forms at a point.
//
// Conventions:
//  * 2-forms are antisymmetric coordinate matrices w_ij.
//  * A 2-form w and a skew endomorphism W are identified by
//    w(X, Y) = g(W X, Y), i.e. W = -g^{-1} w.
//  * (w1, w2) = -1/2 tr(W1 o W2), so e0^e1 + e2^e3 has squared norm 2.
//  * J acts on 1-forms by (J a)(X) = -a(J X).
//  * Coframes are 4x4 matrices whose rows are the covectors e^a; the
//    dual frame is the inverse, with the frame vectors as columns.

#include <array>
#include <utility>

#include <Eigen/Core>
#include <Eigen/LU>

#include "sdeh/types.hpp"

namespace sdeh {

using TwoFormBasis = std::array<TwoForm, 3>;

// Levi-Civita symbol on four indices.
int levi_civita(int a, int b, int c, int d);

// Frame components of the standard self-dual / anti-self-dual basis:
// e01 +- e23, e02 -+ e13, e03 +- e12.
const TwoFormBasis& frame_lambda_plus();
const TwoFormBasis& frame_lambda_minus();

inline TwoForm to_frame(const TwoForm& w, const Matrix4& frame) {
  return frame.transpose() * w * frame;
}
inline TwoForm from_frame(const TwoForm& w, const Matrix4& coframe) {
  return coframe.transpose() * w * coframe;
}

// Hodge star of a frame-component 2-form (frame positively oriented).
TwoForm hodge_star_frame(const TwoForm& w);

// Hodge star of a coordinate 2-form with respect to an oriented orthonormal coframe.
TwoForm hodge_star2(const TwoForm& w, const Matrix4& coframe);

// Lambda+ and Lambda- bases (coordinate components) for an oriented coframe.
std::pair<TwoFormBasis, TwoFormBasis> lambda_bases(const Matrix4& coframe);

inline Matrix4 endomorphism(const TwoForm& w, const Matrix4& g_inv) { return -g_inv * w; }
inline TwoForm two_form(const Matrix4& endo, const Matrix4& g) { return -g * endo; }

inline double inner2(const TwoForm& a, const TwoForm& b, const Matrix4& g_inv) {
  return -0.5 * (endomorphism(a, g_inv) * endomorphism(b, g_inv)).trace();
}
inline double norm2_sq(const TwoForm& a, const Matrix4& g_inv) { return inner2(a, a, g_inv); }

inline double inner1(const OneForm& a, const OneForm& b, const Matrix4& g_inv) {
  return a.dot(g_inv * b);
}

// [w1, w2] computed on endomorphisms, returned as a 2-form.
inline TwoForm commutator(const TwoForm& a, const TwoForm& b, const Matrix4& g,
                          const Matrix4& g_inv) {
  const Matrix4 A = endomorphism(a, g_inv);
  const Matrix4 B = endomorphism(b, g_inv);
  return two_form(A * B - B * A, g);
}

inline OneForm apply_j(const Matrix4& J, const OneForm& a) { return -J.transpose() * a; }

// Anti-self-dual / self-dual projections (id +- star)/2.
inline TwoForm self_dual_part(const TwoForm& w, const Matrix4& coframe) {
  return 0.5 * (w + hodge_star2(w, coframe));
}
inline TwoForm anti_self_dual_part(const TwoForm& w, const Matrix4& coframe) {
  return 0.5 * (w - hodge_star2(w, coframe));
}

}  // namespace sdeh
