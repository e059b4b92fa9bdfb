#pragma once

// Second-order forward-mode jets over four coordinates.
//
// A Jet2 carries a value, its gradient and its (symmetric) Hessian with
// respect to the four chart coordinates. Metric components and every scalar
// field in the catalog are written as templates over the scalar type so the
// same expression evaluates either to plain doubles or to exact 2-jets.

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>

#include "sdeh/errors.hpp"

namespace sdeh {

template <typename Scalar>
class Jet2 {
 public:
  using Vector = Eigen::Matrix<Scalar, 4, 1>;
  using Matrix = Eigen::Matrix<Scalar, 4, 4>;

  static constexpr int kDim = 4;
  static constexpr int kPacked = 10;

  Jet2() : value_(0), grad_(Vector::Zero()) { packed_.fill(Scalar(0)); }
  Jet2(Scalar v) : value_(v), grad_(Vector::Zero()) { packed_.fill(Scalar(0)); }  // NOLINT

  static Jet2 variable(Scalar v, int index) {
    Jet2 j(v);
    j.grad_[index] = Scalar(1);
    return j;
  }

  Scalar value() const { return value_; }
  const Vector& grad() const { return grad_; }
  Scalar grad(int i) const { return grad_[i]; }

  // Upper triangle is stored; lower entries are mirrored on read.
  Scalar hess(int i, int j) const { return packed_[packed_index(i, j)]; }
  Matrix hessian() const {
    Matrix h;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) h(i, j) = hess(i, j);
    return h;
  }

  static constexpr int packed_index(int i, int j) {
    if (i > j) {
      const int t = i;
      i = j;
      j = t;
    }
    // rows of the upper triangle: 0..3, 4..6, 7..8, 9
    return i * kDim - (i * (i - 1)) / 2 + (j - i);
  }

  // Applies a scalar function with derivatives d1, d2 at value().
  Jet2 chain(Scalar f0, Scalar d1, Scalar d2) const {
    Jet2 r(f0);
    r.grad_ = d1 * grad_;
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        const int k = packed_index(i, j);
        r.packed_[k] = d1 * packed_[k] + d2 * grad_[i] * grad_[j];
      }
    return r;
  }

  // Bivariate chain rule for f(u, v).
  static Jet2 chain2(const Jet2& u, const Jet2& v, Scalar f0, Scalar fu, Scalar fv, Scalar fuu,
                     Scalar fuv, Scalar fvv) {
    Jet2 r(f0);
    r.grad_ = fu * u.grad_ + fv * v.grad_;
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        const int k = packed_index(i, j);
        r.packed_[k] = fu * u.packed_[k] + fv * v.packed_[k] + fuu * u.grad_[i] * u.grad_[j] +
                       fvv * v.grad_[i] * v.grad_[j] +
                       fuv * (u.grad_[i] * v.grad_[j] + v.grad_[i] * u.grad_[j]);
      }
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    value_ += o.value_;
    grad_ += o.grad_;
    for (int k = 0; k < kPacked; ++k) packed_[k] += o.packed_[k];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    value_ -= o.value_;
    grad_ -= o.grad_;
    for (int k = 0; k < kPacked; ++k) packed_[k] -= o.packed_[k];
    return *this;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this / o; }

  Jet2 operator-() const {
    Jet2 r(*this);
    r.value_ = -value_;
    r.grad_ = -grad_;
    for (auto& h : r.packed_) h = -h;
    return r;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.value_ * b.value_);
    r.grad_ = a.value_ * b.grad_ + b.value_ * a.grad_;
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        const int k = packed_index(i, j);
        r.packed_[k] = a.value_ * b.packed_[k] + b.value_ * a.packed_[k] +
                       a.grad_[i] * b.grad_[j] + b.grad_[i] * a.grad_[j];
      }
    return r;
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.value_ == Scalar(0)) throw DomainError("jet division by zero");
    const Scalar inv = Scalar(1) / b.value_;
    return a * b.chain(inv, -inv * inv, Scalar(2) * inv * inv * inv);
  }

  // Scalar overloads avoid materializing constant jets.
  friend Jet2 operator*(Scalar s, Jet2 a) {
    a.value_ *= s;
    a.grad_ *= s;
    for (auto& h : a.packed_) h *= s;
    return a;
  }
  friend Jet2 operator*(const Jet2& a, Scalar s) { return s * a; }
  friend Jet2 operator/(const Jet2& a, Scalar s) {
    if (s == Scalar(0)) throw DomainError("jet division by zero");
    return (Scalar(1) / s) * a;
  }
  friend Jet2 operator/(Scalar s, const Jet2& b) { return Jet2(s) / b; }
  friend Jet2 operator+(Jet2 a, Scalar s) {
    a.value_ += s;
    return a;
  }
  friend Jet2 operator+(Scalar s, Jet2 a) { return a + s; }
  friend Jet2 operator-(Jet2 a, Scalar s) {
    a.value_ -= s;
    return a;
  }
  friend Jet2 operator-(Scalar s, const Jet2& a) { return -a + s; }

 private:
  Scalar value_;
  Vector grad_;
  std::array<Scalar, kPacked> packed_;
};

using Jet = Jet2<double>;

template <typename Scalar>
Jet2<Scalar> exp(const Jet2<Scalar>& a) {
  using std::exp;
  const Scalar e = exp(a.value());
  return a.chain(e, e, e);
}

template <typename Scalar>
Jet2<Scalar> log(const Jet2<Scalar>& a) {
  using std::log;
  if (!(a.value() > Scalar(0))) throw DomainError("log of non-positive jet");
  const Scalar inv = Scalar(1) / a.value();
  return a.chain(log(a.value()), inv, -inv * inv);
}

template <typename Scalar>
Jet2<Scalar> sqrt(const Jet2<Scalar>& a) {
  using std::sqrt;
  if (!(a.value() > Scalar(0))) throw DomainError("sqrt of non-positive jet");
  const Scalar r = sqrt(a.value());
  const Scalar d1 = Scalar(0.5) / r;
  return a.chain(r, d1, -d1 / (Scalar(2) * a.value()));
}

// Real, sign-preserving cube root.
template <typename Scalar>
Jet2<Scalar> cbrt(const Jet2<Scalar>& a) {
  using std::cbrt;
  if (a.value() == Scalar(0)) throw DomainError("cbrt derivative at zero");
  const Scalar r = cbrt(a.value());
  const Scalar d1 = Scalar(1) / (Scalar(3) * r * r);
  return a.chain(r, d1, Scalar(-2) * d1 / (Scalar(3) * a.value()));
}

template <typename Scalar>
Jet2<Scalar> sin(const Jet2<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(a.value());
  return a.chain(s, cos(a.value()), -s);
}

template <typename Scalar>
Jet2<Scalar> cos(const Jet2<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(a.value());
  return a.chain(c, -sin(a.value()), -c);
}

template <typename Scalar>
Jet2<Scalar> pow(const Jet2<Scalar>& a, Scalar n) {
  using std::pow;
  using std::round;
  const bool integral = n == round(n);
  if (!integral && !(a.value() > Scalar(0)))
    throw DomainError("non-integer power of non-positive jet");
  if (a.value() == Scalar(0)) {
    if (n < Scalar(0)) throw DomainError("negative power of zero jet");
    const Scalar d1 = n == Scalar(1) ? Scalar(1) : Scalar(0);
    const Scalar d2 = n == Scalar(2) ? Scalar(2) : Scalar(0);
    return a.chain(Scalar(0), d1, d2);
  }
  const Scalar v = a.value();
  const Scalar p = pow(v, n);
  return a.chain(p, n * p / v, n * (n - Scalar(1)) * p / (v * v));
}

template <typename Scalar>
Jet2<Scalar> pow(const Jet2<Scalar>& a, int n) {
  return pow(a, static_cast<Scalar>(n));
}

template <typename Scalar>
Jet2<Scalar> pow(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return exp(b * log(a));
}

template <typename Scalar>
Jet2<Scalar> atan2(const Jet2<Scalar>& y, const Jet2<Scalar>& x) {
  using std::atan2;
  const Scalar r2 = x.value() * x.value() + y.value() * y.value();
  if (r2 == Scalar(0)) throw DomainError("atan2 at the origin");
  const Scalar r4 = r2 * r2;
  const Scalar xv = x.value();
  const Scalar yv = y.value();
  return Jet2<Scalar>::chain2(y, x, atan2(yv, xv), xv / r2, -yv / r2, -Scalar(2) * xv * yv / r4,
                              (yv * yv - xv * xv) / r4, Scalar(2) * xv * yv / r4);
}

template <typename Scalar>
Jet2<Scalar> abs(const Jet2<Scalar>& a) {
  return a.value() < Scalar(0) ? -a : a;
}

template <typename Scalar>
std::array<Jet2<Scalar>, 4> seed_coordinates(const Eigen::Matrix<Scalar, 4, 1>& point) {
  std::array<Jet2<Scalar>, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = Jet2<Scalar>::variable(point[i], i);
  return out;
}

// Helpers so chart templates can pull the plain value from either scalar type.
inline double value_of(double v) { return v; }
template <typename Scalar>
Scalar value_of(const Jet2<Scalar>& j) {
  return j.value();
}

}  // namespace sdeh
