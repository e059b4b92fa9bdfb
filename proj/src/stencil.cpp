#include "sdeh/stencil.hpp"

namespace sdeh {

Matrix4 covariant_1form(const Christoffel& gamma, const OneForm& a,
                        const std::array<OneForm, 4>& d) {
  Matrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double v = d[i][j];
      for (int c = 0; c < 4; ++c) v -= gamma(c, i, j) * a[c];
      out(i, j) = v;
    }
  return out;
}

std::array<TwoForm, 4> covariant_2form(const Christoffel& gamma, const TwoForm& w,
                                       const std::array<TwoForm, 4>& d) {
  std::array<TwoForm, 4> out;
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = d[c](a, b);
        for (int e = 0; e < 4; ++e) v -= gamma(e, c, a) * w(e, b) + gamma(e, c, b) * w(a, e);
        out[c](a, b) = v;
      }
  return out;
}

std::array<Matrix4, 4> covariant_endomorphism(const Christoffel& gamma, const Matrix4& t,
                                              const std::array<Matrix4, 4>& d) {
  std::array<Matrix4, 4> out;
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = d[c](a, b);
        for (int e = 0; e < 4; ++e) v += gamma(a, c, e) * t(e, b) - gamma(e, c, b) * t(a, e);
        out[c](a, b) = v;
      }
  return out;
}

double codifferential_1form(const Matrix4& g_inv, const Matrix4& da) {
  return -(g_inv.cwiseProduct(da)).sum();
}

OneForm codifferential_2form(const Matrix4& g_inv, const std::array<TwoForm, 4>& dw) {
  OneForm out = OneForm::Zero();
  for (int b = 0; b < 4; ++b)
    for (int c = 0; c < 4; ++c)
      for (int a = 0; a < 4; ++a) out[b] -= g_inv(c, a) * dw[c](a, b);
  return out;
}

}  // namespace sdeh
