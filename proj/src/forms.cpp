#include "sdeh/forms.hpp"

namespace sdeh {

int levi_civita(int a, int b, int c, int d) {
  const std::array<int, 4> p{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

namespace {

TwoForm elementary(int a, int b) {
  TwoForm w = TwoForm::Zero();
  w(a, b) = 1.0;
  w(b, a) = -1.0;
  return w;
}

TwoFormBasis make_basis(double sign) {
  return {elementary(0, 1) + sign * elementary(2, 3), elementary(0, 2) - sign * elementary(1, 3),
          elementary(0, 3) + sign * elementary(1, 2)};
}

}  // namespace

const TwoFormBasis& frame_lambda_plus() {
  static const TwoFormBasis basis = make_basis(1.0);
  return basis;
}

const TwoFormBasis& frame_lambda_minus() {
  static const TwoFormBasis basis = make_basis(-1.0);
  return basis;
}

TwoForm hodge_star_frame(const TwoForm& w) {
  TwoForm out = TwoForm::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      double acc = 0.0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const int e = levi_civita(a, b, c, d);
          if (e != 0) acc += e * w(c, d);
        }
      out(a, b) = 0.5 * acc;
    }
  return out;
}

TwoForm hodge_star2(const TwoForm& w, const Matrix4& coframe) {
  const Matrix4 frame = coframe.inverse();
  return from_frame(hodge_star_frame(to_frame(w, frame)), coframe);
}

std::pair<TwoFormBasis, TwoFormBasis> lambda_bases(const Matrix4& coframe) {
  TwoFormBasis plus;
  TwoFormBasis minus;
  for (int i = 0; i < 3; ++i) {
    plus[i] = from_frame(frame_lambda_plus()[i], coframe);
    minus[i] = from_frame(frame_lambda_minus()[i], coframe);
  }
  return {plus, minus};
}

}  // namespace sdeh
