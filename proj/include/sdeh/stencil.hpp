#pragma once

// Central finite differences for fields that cannot carry jets (anything
// passing through an eigen-decomposition), plus the covariant-derivative
// bookkeeping shared by the analysis modules.
//
// The first derivative uses the 5-point stencil
//   D(h) = [f(p-2h) - 8 f(p-h) + 8 f(p+h) - f(p+2h)] / 12h
// with one Richardson step D(h/2) + (D(h/2) - D(h)) / 15.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include "sdeh/chart.hpp"
#include "sdeh/curvature.hpp"
#include "sdeh/errors.hpp"

namespace sdeh {

inline constexpr double kStencilRelativeStep = 1e-3;

inline double stencil_step(const Point& p, int axis) {
  return kStencilRelativeStep * std::max(1.0, std::abs(p[axis]));
}

// Throws DomainError if any point of the axis stencil leaves the chart domain.
inline void require_stencil_domain(const MetricChart& chart, const Point& p, int axis) {
  const double h = stencil_step(p, axis);
  for (double k : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    Point q = p;
    q[axis] += k * h;
    if (auto why = chart.domain_violation(q))
      throw DomainError(chart.name + ": stencil leaves domain (" + *why + ")");
  }
}

template <typename Field>
auto partial(const Field& f, const Point& p, int axis) {
  using T = std::decay_t<decltype(f(p))>;
  auto at = [&](double offset) {
    Point q = p;
    q[axis] += offset;
    return T(f(q));
  };
  auto five_point = [&](double h) {
    return T((at(-2.0 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2.0 * h)) / (12.0 * h));
  };
  const double h = stencil_step(p, axis);
  const T coarse = five_point(h);
  const T fine = five_point(0.5 * h);
  return T(fine + (fine - coarse) / 15.0);
}

template <typename Field>
auto partial(const MetricChart& chart, const Field& f, const Point& p, int axis) {
  require_stencil_domain(chart, p, axis);
  return partial(f, p, axis);
}

// All four coordinate partials of a field.
template <typename Field>
auto partials(const MetricChart& chart, const Field& f, const Point& p) {
  using T = std::decay_t<decltype(f(p))>;
  std::array<T, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = partial(chart, f, p, i);
  return out;
}

// Gradient (as a 1-form) of a scalar field.
template <typename Field>
OneForm stencil_differential(const MetricChart& chart, const Field& f, const Point& p) {
  OneForm d;
  for (int i = 0; i < 4; ++i) d[i] = partial(chart, f, p, i);
  return d;
}

// Coordinate partials of a 1-form field turned into its exterior derivative.
inline TwoForm exterior_derivative(const std::array<OneForm, 4>& d) {
  TwoForm out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = d[i][j] - d[j][i];
  return out;
}

// (D a)_{ij} = D_i a_j from partials d[i][j] = d_i a_j.
Matrix4 covariant_1form(const Christoffel& gamma, const OneForm& a,
                        const std::array<OneForm, 4>& d);

// (D w)[c](a, b) = D_c w_ab from partials d[c](a, b) = d_c w_ab.
std::array<TwoForm, 4> covariant_2form(const Christoffel& gamma, const TwoForm& w,
                                       const std::array<TwoForm, 4>& d);

// (D T)[c] = D_c T^a_b for an endomorphism field.
std::array<Matrix4, 4> covariant_endomorphism(const Christoffel& gamma, const Matrix4& t,
                                              const std::array<Matrix4, 4>& d);

// delta a = -g^{ij} D_i a_j
double codifferential_1form(const Matrix4& g_inv, const Matrix4& da);

// (delta w)_b = -g^{ca} D_c w_ab
OneForm codifferential_2form(const Matrix4& g_inv, const std::array<TwoForm, 4>& dw);

// Frame components M(e_A, e_B) of a covariant 2-tensor.
inline Matrix4 frame_components(const Matrix4& m, const Matrix4& frame) {
  return frame.transpose() * m * frame;
}

}  // namespace sdeh
