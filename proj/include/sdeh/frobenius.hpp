#pragma once

// The Frobenius system for (p, q^2) in the coordinates x = kappa^{1/3},
// y = |theta|^2, its closed-form solution, path integration, and the
// structure equations of the adapted coframe of the canonic chart.

#include <array>
#include <vector>

#include "sdeh/catalog.hpp"
#include "sdeh/chart.hpp"

namespace sdeh {

using SolutionConstants = CanonicParams;

struct FrobeniusState {
  double x = 1.0;
  double y = 1.0;
  double p = 0.0;
  double q2 = 0.0;
};

struct PQ {
  double p = 0.0;
  double q2 = 0.0;
};

PQ closed_form_pq(const SolutionConstants& c, double x, double y);

template <typename S>
struct FrobeniusRhsT {
  S dp_dx, dp_dy, dq2_dx, dq2_dy;
};

// Right-hand sides exactly as the system is written; generic so that the
// integrability check can push jets through it.
template <typename S>
FrobeniusRhsT<S> frobenius_rhs_t(const S& x, const S& y, const S& p, const S& q2, double s) {
  const S k = (x * x * x - s) / 24.0;
  const S ky = k / y;
  const S x3y = x * x * x / (24.0 * y);
  FrobeniusRhsT<S> r;
  r.dp_dx = (2.0 * q2 + 2.0 * (p + ky) * (p - ky + 1.0) - 0.5 - x3y) / x;
  r.dp_dy = -1.0 * (2.0 * p + ky - 0.5) / y;
  r.dq2_dy = -1.0 * (2.0 * q2 - 2.0 * p * (p + ky - 0.5) + x3y) / y;
  r.dq2_dx = -2.0 / x *
             ((p - ky + 0.5) * (2.0 * p * (p + ky - 0.5) - x3y) - 2.0 * q2 * (1.0 - p));
  return r;
}

using FrobeniusRhs = FrobeniusRhsT<double>;

FrobeniusRhs frobenius_rhs(const FrobeniusState& state, const SolutionConstants& c);

// Mixed partials d_y(dp/dx) - d_x(dp/dy) and d_y(dq2/dx) - d_x(dq2/dy)
// along solutions, obtained by differentiating the right-hand sides with
// the system itself.
std::array<double, 2> frobenius_integrability(const FrobeniusState& state, const SolutionConstants& c);

struct IntegrationResult {
  FrobeniusState end;
  bool left_domain = false;  // q^2 <= 0 somewhere along the path
  int steps = 0;
  int rejected = 0;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) along the polyline
// start -> path[0] -> path[1] -> ..., each segment parametrized linearly.
IntegrationResult integrate_frobenius(const FrobeniusState& start, const SolutionConstants& c,
                                      const std::vector<std::array<double, 2>>& path,
                                      double tolerance = 1e-10);

// x^2 f'' - 5 x f' + 8 f + (x^6 - s^2)/72 for given f, f', f''.
double ode_residual(double x, double s, double f, double fprime, double fsecond);

// The residual for f = a x^2 + b x^4 - (x^6 - s^2)/576.
double ode_f_residual(const SolutionConstants& c, double x);

struct GaugeResiduals {
  double dalpha = 0.0;       // d alpha - (kappa - s)/(12 y) alpha ^ theta, and d alpha - alpha ^ J beta
  double dJalpha = 0.0;      // d(J alpha) - J alpha ^ J beta
  double dJbeta = 0.0;       // J beta - d ln(|kappa| / (|q| y^2))
  double dJa = 0.0;          // d(kappa / (q y^2) J alpha)
  double dJtheta = 0.0;      // d(kappa^{1/3}/y J theta) - kappa^{1/3}/y J alpha ^ eta
  double ricci1 = 0.0;
  double ricci2 = 0.0;

  double max() const;
};

// Requires a chart built by canonic_chart; evaluates with jets.
GaugeResiduals gauge_coframe_residuals(const MetricChart& chart, const Point& p);

}  // namespace sdeh
