#pragma once

// Analytic evaluation of the limiting law F_y of the eigenvalues of
// A = X X^T, X the lag-s auto-covariance matrix, at aspect ratio y.
//
// The Stieltjes transform s(z) = \int dF(x) / (x - z) solves
//
//   y^2 z^2 s^3 + (y^2 z - y z) s^2 - z s - 1 = 0,
//
// handled here in the variable u = z s:
//
//   y^2 u^3 + (y^2 - y) u^2 - z u - z = 0.
//
// The continuous part lives on [a, b]; for y > 1 a point mass 1 - 1/y sits at
// zero because rank(A) <= T. That atom is inferred from the rank bound and is
// checked against the integrated continuous mass, not assumed.

#include <array>
#include <complex>
#include <vector>

#include "lagcov/cubic.hpp"

namespace lagcov {

struct SupportEndpoints {
  double a = 0.0;
  double b = 0.0;
  double y = 0.0;
};

// a = (-1 + 20y + 8y^2 - (1+8y)^{3/2}) / 8 for y >= 1 (else 0),
// b = (-1 + 20y + 8y^2 + (1+8y)^{3/2}) / 8. DomainError for y <= 0.
SupportEndpoints support_endpoints(double y);

// 1 - 1/y for y > 1, else 0.
double atom_at_zero(double y);

struct StieltjesEvaluation {
  Complex z;
  Complex s;
  double residual = 0.0;  // |y^2 z^2 s^3 + y^2 z s^2 - y z s^2 - z s - 1|
};

// Requires Im z > 0 (DomainError otherwise). Picks the root with Im s > 0 and
// Im(z s) >= 0, the branch of a Stieltjes transform of a measure on
// [0, inf). RootSelectionError if that root is missing or not unique.
StieltjesEvaluation stieltjes(Complex z, double y);

// All three roots s of the cubic at z (no branch selection).
std::array<Complex, 3> stieltjes_cubic_roots(Complex z, double y);

// Im s(x + i eps) / pi, Richardson-extrapolated from
// eps in {1e-6, 1e-7, 1e-8} * max(1, |x|). Exactly 0 outside the support.
double density(double x, double y);

// Density from the real cubic at z = x: inside the support the cubic has one
// real root and a conjugate pair, and the density is |Im s| / pi of the pair.
// Independent of the epsilon route above.
double density_from_discriminant(double x, double y);

// \int_a^b x^k density(x) dx (k >= 1) by adaptive Gauss-Kronrod in the
// sin^2 substitution, integrating the discriminant-route density.
// QuadratureError on failure; DomainError for k < 1.
double law_moment_quadrature(int k, double y);

// \int_a^b density(x) dx; equals 1 - atom_at_zero(y) up to quadrature error.
double continuous_mass(double y);

struct CdfPoint {
  double x;
  double value;
};

// F(x) on a grid of npoints >= 2 points in [a, b] (uniform in theta with
// x = a + (b - a) sin^2 theta), including the atom at zero.
std::vector<CdfPoint> cdf_curve(double y, int npoints);

struct DensityPoint {
  double x;
  double value;
};

struct SpectralLaw {
  double y = 0.0;
  SupportEndpoints endpoints;
  std::vector<DensityPoint> grid;
  std::vector<CdfPoint> cdf;
  double atom_at_zero = 0.0;
};

// Density and CDF sampled on the same npoints grid.
SpectralLaw make_spectral_law(double y, int npoints);

// Piecewise-linear (in theta) interpolant of the CDF, for KS distances.
class LawCdf {
 public:
  LawCdf(double y, int npoints = 4097);

  double operator()(double x) const;
  const SupportEndpoints& endpoints() const { return endpoints_; }
  double atom() const { return atom_; }

 private:
  SupportEndpoints endpoints_;
  double atom_;
  std::vector<double> values_;  // F at theta_i = (pi/2) i / (n-1)
};

}  // namespace lagcov
