#include "lagcov/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lagcov {

namespace {

Complex evaluate(const std::array<Complex, 4>& c, Complex u) {
  return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
}

Complex derivative(const std::array<Complex, 4>& c, Complex u) {
  return (3.0 * c[3] * u + 2.0 * c[2]) * u + c[1];
}

void polish(const std::array<Complex, 4>& c, Complex& u) {
  for (int iter = 0; iter < 3; ++iter) {
    const Complex d = derivative(c, u);
    if (std::abs(d) == 0.0) return;
    const Complex step = evaluate(c, u) / d;
    const Complex next = u - step;
    if (!(std::abs(evaluate(c, next)) < std::abs(evaluate(c, u)))) return;
    u = next;
  }
}

}  // namespace

std::array<Complex, 3> solve_cubic(Complex c3, Complex c2, Complex c1, Complex c0) {
  if (std::abs(c3) == 0.0) throw std::invalid_argument("solve_cubic: leading coefficient is zero");
  const Complex a = c2 / c3;
  const Complex b = c1 / c3;
  const Complex c = c0 / c3;

  // u = t - a/3 gives t^3 + p t + q = 0.
  const Complex shift = a / 3.0;
  const Complex p = b - a * a / 3.0;
  const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const Complex disc = q * q / 4.0 + p * p * p / 27.0;
  const Complex root = std::sqrt(disc);
  // Pick the sign that avoids cancellation.
  Complex w = -q / 2.0 + root;
  const Complex w_alt = -q / 2.0 - root;
  if (std::abs(w_alt) > std::abs(w)) w = w_alt;

  std::array<Complex, 3> roots;
  if (std::abs(w) == 0.0) {
    // p = q = 0: triple root.
    roots.fill(-shift);
  } else {
    const Complex C = std::pow(w, 1.0 / 3.0);
    const Complex omega(-0.5, std::numbers::sqrt3 / 2.0);
    Complex rotation(1.0, 0.0);
    for (auto& r : roots) {
      const Complex Ck = C * rotation;
      r = Ck - p / (3.0 * Ck) - shift;
      rotation *= omega;
    }
  }
  const std::array<Complex, 4> coeffs{c0, c1, c2, c3};
  for (auto& r : roots) polish(coeffs, r);
  return roots;
}

RealCubicRoots solve_real_cubic(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0) throw std::invalid_argument("solve_real_cubic: leading coefficient is zero");
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double half_q = q / 2.0;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  auto newton = [&](double u) {
    for (int iter = 0; iter < 3; ++iter) {
      const double f = ((u + a) * u + b) * u + c;
      const double df = (3.0 * u + 2.0 * a) * u + b;
      if (df == 0.0) break;
      const double next = u - f / df;
      const double fn = ((next + a) * next + b) * next + c;
      if (!(std::abs(fn) < std::abs(f))) break;
      u = next;
    }
    return u;
  };

  RealCubicRoots out;
  if (disc > 0.0) {
    // One real root; the other two are a conjugate pair.
    const double sq = std::sqrt(disc);
    const double w = -half_q + (half_q <= 0.0 ? sq : -sq);
    const double A = std::cbrt(w);
    const double B = A == 0.0 ? 0.0 : -third_p / A;
    const double t = A + B;
    const double real_root = newton(t - shift);
    // Deflate: u^2 + (a + r) u + (b + (a + r) r).
    const double lin = a + real_root;
    const double cons = std::abs(real_root) > 0.0 ? -c / real_root : b + lin * real_root;
    const double re = -lin / 2.0;
    const double im2 = cons - re * re;
    out.has_complex_pair = im2 > 0.0;
    out.real = {real_root, real_root, real_root};
    if (out.has_complex_pair) {
      out.pair = Complex(re, std::sqrt(im2));
    } else {
      // Numerically real pair (disc barely positive).
      const double d = std::sqrt(-im2);
      out.real = {real_root, re - d, re + d};
      std::sort(out.real.begin(), out.real.end());
    }
    return out;
  }
  // Three real roots, trigonometric form.
  if (p == 0.0) {
    out.real.fill(newton(-shift));
    return out;
  }
  const double m = 2.0 * std::sqrt(-third_p);
  const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  for (int i = 0; i < 3; ++i) {
    out.real[static_cast<std::size_t>(i)] =
        newton(m * std::cos(theta - 2.0 * std::numbers::pi * i / 3.0) - shift);
  }
  std::sort(out.real.begin(), out.real.end());
  return out;
}

}  // namespace lagcov
