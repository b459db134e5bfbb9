#pragma once

#include <array>
#include <complex>

namespace lagcov {

using Complex = std::complex<double>;

// All three roots of c3 u^3 + c2 u^2 + c1 u + c0 (c3 != 0), by Cardano's
// formula on the depressed cubic followed by Newton polishing.
std::array<Complex, 3> solve_cubic(Complex c3, Complex c2, Complex c1, Complex c0);

// Real-coefficient cubic classified by its discriminant.
struct RealCubicRoots {
  // True when there is one real root and a complex-conjugate pair.
  bool has_complex_pair = false;
  // Real roots, ascending; only real[0] is meaningful when has_complex_pair.
  std::array<double, 3> real{};
  // Root of the conjugate pair with nonnegative imaginary part.
  Complex pair{};
};

RealCubicRoots solve_real_cubic(double c3, double c2, double c1, double c0);

}  // namespace lagcov
