#pragma once

#include <array>

#include <Eigen/Core>

#include "sdeh/jet.hpp"

namespace sdeh {

using Point = Eigen::Vector4d;
// Covector components in chart coordinates.
using OneForm = Eigen::Vector4d;
// Antisymmetric coordinate components w_ij of a 2-form w = 1/2 w_ij dx^i ^ dx^j.
using TwoForm = Eigen::Matrix4d;
using Matrix4 = Eigen::Matrix4d;

using JetPoint = std::array<Jet, 4>;
using JetOneForm = std::array<Jet, 4>;

// Symmetric 4x4 matrix of jets, stored as the upper triangle.
template <typename Scalar>
class Sym4 {
 public:
  Sym4() = default;
  Scalar& operator()(int i, int j) { return data_[Jet::packed_index(i, j)]; }
  const Scalar& operator()(int i, int j) const { return data_[Jet::packed_index(i, j)]; }

 private:
  std::array<Scalar, 10> data_{};
};

using MetricJets = Sym4<Jet>;

// Plain value matrix of a jet-valued symmetric matrix.
inline Matrix4 values(const MetricJets& g) {
  Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = g(i, j).value();
  return m;
}

inline Matrix4 values(const Sym4<double>& g) {
  Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = g(i, j);
  return m;
}

// Exterior derivative of a jet-valued 1-form: (dw)_ij = d_i w_j - d_j w_i.
inline TwoForm exterior_derivative(const JetOneForm& w) {
  TwoForm d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = w[j].grad(i) - w[i].grad(j);
  return d;
}

inline OneForm values(const JetOneForm& w) {
  OneForm v;
  for (int i = 0; i < 4; ++i) v[i] = w[i].value();
  return v;
}

inline OneForm differential(const Jet& f) { return f.grad(); }

// (a ^ b)_ij = a_i b_j - a_j b_i
inline TwoForm wedge(const OneForm& a, const OneForm& b) {
  return a * b.transpose() - b * a.transpose();
}

}  // namespace sdeh
