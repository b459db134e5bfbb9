#pragma once

#include <functional>

namespace lagcov {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod-Gauss difference summed over panels
  int panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  int max_panels = 4000;
};

// Globally adaptive 7/15-point Gauss-Kronrod: the panel with the largest
// error estimate is bisected until the summed estimate is below
// max(abs_tol, rel_tol * |value|). Throws QuadratureError when max_panels is
// reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureOptions& options = {});

// Integral of f over [a, b] after x = a + (b - a) sin^2(theta), which turns
// square-root endpoint behaviour into a smooth integrand in theta.
QuadratureResult integrate_sqrt_endpoints(const std::function<double(double)>& f, double a, double b,
                                          const QuadratureOptions& options = {});

// Same substitution restricted to theta in [theta_lo, theta_hi] within [0, pi/2].
QuadratureResult integrate_sqrt_endpoints_theta(const std::function<double(double)>& f, double a,
                                                double b, double theta_lo, double theta_hi,
                                                const QuadratureOptions& options = {});

}  // namespace lagcov
