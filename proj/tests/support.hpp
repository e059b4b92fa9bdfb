#pragma once

#include <array>
#include <functional>
#include <cmath>
#include <random>
#include <vector>

#include "sdeh/chart.hpp"
#include "sdeh/errors.hpp"

namespace sdeh::testing {

// A metric with no symmetry: identity plus a random perturbation that mixes
// polynomial and trigonometric dependence on all four coordinates.
struct GenericMetric {
  std::array<Matrix4, 6> m;

  explicit GenericMetric(unsigned seed, double amplitude = 0.15) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& a : m) {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = u(rng);
      a = (amplitude * 0.5 * (a + a.transpose())).eval();
    }
  }

  template <typename S>
  Sym4<S> operator()(const std::array<S, 4>& x) const {
    using std::sin;
    const S wave = sin(x[0] + 2.0 * x[1] - x[3]);
    const S bump = x[2] * x[2] - x[0] * x[3];
    Sym4<S> g;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        S v = S(i == j ? 1.0 : 0.0) + m[0](i, j);
        for (int k = 0; k < 4; ++k) v = v + m[k + 1](i, j) * x[k];
        g(i, j) = v + m[5](i, j) * wave + 0.1 * m[1](i, j) * bump;
      }
    return g;
  }
};

inline MetricChart chart_of(std::function<void(MetricChart&)> bind) {
  MetricChart chart;
  chart.name = "generic";
  chart.coordinates = {"x0", "x1", "x2", "x3"};
  chart.domain_violation = [](const Point& p) -> std::optional<std::string> {
    if (p.cwiseAbs().maxCoeff() > 0.6) return "|x_i| <= 0.6 violated";
    return std::nullopt;
  };
  bind(chart);
  chart.orientation = [](const Point&) { return 1; };
  return chart;
}

inline MetricChart generic_chart(unsigned seed, double amplitude = 0.15) {
  const GenericMetric metric(seed, amplitude);
  return chart_of([&](MetricChart& c) { bind_metric(c, metric); });
}

inline std::vector<Point> random_points(unsigned seed, int n, const Point& lo, const Point& hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) {
    Point p;
    for (int i = 0; i < 4; ++i) p[i] = lo[i] + u(rng) * (hi[i] - lo[i]);
    out.push_back(p);
  }
  return out;
}

}  // namespace sdeh::testing
