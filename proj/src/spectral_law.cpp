#include "lagcov/spectral_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lagcov/errors.hpp"
#include "lagcov/quadrature.hpp"

namespace lagcov {

namespace {

void require_positive(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("aspect ratio must be positive and finite, got " + std::to_string(y));
  }
}

double residual_of(Complex z, Complex s, double y) {
  const double y2 = y * y;
  return std::abs(y2 * z * z * s * s * s + y2 * z * s * s - y * z * s * s - z * s - 1.0);
}

}  // namespace

SupportEndpoints support_endpoints(double y) {
  require_positive(y);
  const double base = -1.0 + 20.0 * y + 8.0 * y * y;
  const double edge = std::pow(1.0 + 8.0 * y, 1.5);
  SupportEndpoints out;
  out.y = y;
  out.b = (base + edge) / 8.0;
  out.a = y >= 1.0 ? (base - edge) / 8.0 : 0.0;
  // At y = 1 the lower formula gives exactly 0; guard roundoff.
  out.a = std::max(out.a, 0.0);
  return out;
}

double atom_at_zero(double y) {
  require_positive(y);
  return y > 1.0 ? 1.0 - 1.0 / y : 0.0;
}

std::array<Complex, 3> stieltjes_cubic_roots(Complex z, double y) {
  require_positive(y);
  const auto u = solve_cubic(Complex(y * y), Complex(y * y - y), -z, -z);
  return {u[0] / z, u[1] / z, u[2] / z};
}

StieltjesEvaluation stieltjes(Complex z, double y) {
  require_positive(y);
  if (!(z.imag() > 0.0)) throw DomainError("stieltjes needs Im z > 0");
  const auto roots = stieltjes_cubic_roots(z, y);
  int selected = -1;
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    const Complex s = roots[static_cast<std::size_t>(i)];
    if (s.imag() > 0.0 && (z * s).imag() >= 0.0) {
      selected = i;
      ++count;
    }
  }
  if (count != 1) {
    throw RootSelectionError("stieltjes: " + std::to_string(count) +
                             " admissible roots at z = (" + std::to_string(z.real()) + ", " +
                             std::to_string(z.imag()) + "), y = " + std::to_string(y));
  }
  StieltjesEvaluation out;
  out.z = z;
  out.s = roots[static_cast<std::size_t>(selected)];
  out.residual = residual_of(z, out.s, y);
  return out;
}

double density(double x, double y) {
  const SupportEndpoints ends = support_endpoints(y);
  if (!(x > ends.a && x < ends.b) || x <= 0.0) return 0.0;
  const double scale = std::max(1.0, std::abs(x));
  constexpr std::array<double, 3> kSteps = {1e-6, 1e-7, 1e-8};
  std::array<double, 3> eps{};
  std::array<double, 3> im{};
  for (std::size_t i = 0; i < 3; ++i) {
    eps[i] = kSteps[i] * scale;
    im[i] = stieltjes(Complex(x, eps[i]), y).s.imag();
  }
  // Quadratic through the three samples, evaluated at eps = 0.
  double extrapolated = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double weight = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) weight *= eps[j] / (eps[j] - eps[i]);
    }
    extrapolated += weight * im[i];
  }
  return std::max(0.0, extrapolated / std::numbers::pi);
}

double density_from_discriminant(double x, double y) {
  require_positive(y);
  if (!(x > 0.0)) return 0.0;
  const auto roots = solve_real_cubic(y * y, y * y - y, -x, -x);
  if (!roots.has_complex_pair) return 0.0;
  return roots.pair.imag() / (x * std::numbers::pi);
}

namespace {

double integrate_power(int k, double y) {
  const SupportEndpoints ends = support_endpoints(y);
  auto integrand = [k, y](double x) {
    const double d = density_from_discriminant(x, y);
    return k == 0 ? d : std::pow(x, k) * d;
  };
  return integrate_sqrt_endpoints(integrand, ends.a, ends.b).value;
}

}  // namespace

double law_moment_quadrature(int k, double y) {
  if (k < 1) throw DomainError("law_moment_quadrature needs k >= 1");
  return integrate_power(k, y);
}

double continuous_mass(double y) { return integrate_power(0, y); }

std::vector<CdfPoint> cdf_curve(double y, int npoints) {
  if (npoints < 2) throw DomainError("cdf_curve needs at least 2 points");
  const SupportEndpoints ends = support_endpoints(y);
  const double atom = atom_at_zero(y);
  const double width = ends.b - ends.a;
  const double step = (std::numbers::pi / 2.0) / (npoints - 1);
  auto dens = [y](double x) { return density_from_discriminant(x, y); };
  QuadratureOptions options;
  options.abs_tol = 1e-11;

  std::vector<CdfPoint> out;
  out.reserve(static_cast<std::size_t>(npoints));
  out.push_back({ends.a, atom});
  double running = atom;
  for (int i = 1; i < npoints; ++i) {
    const double lo = step * (i - 1);
    const double hi = i + 1 == npoints ? std::numbers::pi / 2.0 : step * i;
    running += integrate_sqrt_endpoints_theta(dens, ends.a, ends.b, lo, hi, options).value;
    const double s = std::sin(hi);
    const double x = i + 1 == npoints ? ends.b : ends.a + width * s * s;
    out.push_back({x, running});
  }
  return out;
}

SpectralLaw make_spectral_law(double y, int npoints) {
  SpectralLaw law;
  law.y = y;
  law.endpoints = support_endpoints(y);
  law.atom_at_zero = atom_at_zero(y);
  law.cdf = cdf_curve(y, npoints);
  law.grid.reserve(law.cdf.size());
  for (const auto& point : law.cdf) law.grid.push_back({point.x, density(point.x, y)});
  return law;
}

LawCdf::LawCdf(double y, int npoints) : endpoints_(support_endpoints(y)), atom_(atom_at_zero(y)) {
  const auto curve = cdf_curve(y, npoints);
  values_.reserve(curve.size());
  for (const auto& point : curve) values_.push_back(point.value);
}

double LawCdf::operator()(double x) const {
  if (x < 0.0) return 0.0;
  if (x <= endpoints_.a) return atom_;
  if (x >= endpoints_.b) return values_.back();
  const double ratio = (x - endpoints_.a) / (endpoints_.b - endpoints_.a);
  const double theta = std::asin(std::sqrt(std::clamp(ratio, 0.0, 1.0)));
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(values_.size() - 1);
  const double position = theta / step;
  const auto cell = std::min(static_cast<std::size_t>(position), values_.size() - 2);
  const double frac = position - static_cast<double>(cell);
  return values_[cell] + frac * (values_[cell + 1] - values_[cell]);
}

}  // namespace lagcov
