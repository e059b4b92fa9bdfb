#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdeh/types.hpp"

namespace sdeh {

using ParamMap = std::map<std::string, double>;

// An analytic coordinate chart of a Riemannian 4-metric. Charts are built by
// the catalog and never mutated afterwards; all members are pure functions
// of the point.
struct MetricChart {
  std::string name;
  ParamMap params;
  std::array<std::string, 4> coordinates;

  // Returns the violated inequality, or nullopt when the point is admissible.
  std::function<std::optional<std::string>(const Point&)> domain_violation;
  std::function<MetricJets(const Point&)> metric_jets;
  std::function<Matrix4(const Point&)> metric_value;
  // Sign of the coordinate volume form dx0^dx1^dx2^dx3 in the chosen orientation.
  std::function<int(const Point&)> orientation;

  // Optional analytic fields; empty functions mean "not provided".
  std::function<TwoForm(const Point&)> hermitian_candidate;
  std::function<OneForm(const Point&)> lee_candidate;
  std::vector<std::function<Eigen::Vector4d(const Point&)>> killing_candidates;

  bool in_domain(const Point& p) const { return !domain_violation(p).has_value(); }

  void require_domain(const Point& p) const {
    if (auto why = domain_violation(p)) throw DomainError(name + ": " + *why);
  }

  double param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError(name + ": missing parameter '" + key + "'");
    return it->second;
  }
};

// Wraps a generic metric expression `f(coords) -> Sym4<S>` (templated over
// the scalar type) into the jet and value entry points of a chart.
template <typename MetricExpr>
void bind_metric(MetricChart& chart, MetricExpr expr) {
  chart.metric_jets = [expr](const Point& p) { return expr(seed_coordinates<double>(p)); };
  chart.metric_value = [expr](const Point& p) {
    std::array<double, 4> x{p[0], p[1], p[2], p[3]};
    return values(expr(x));
  };
}

}  // namespace sdeh
