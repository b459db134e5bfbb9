#pragma once

// Limiting moments m_k of the singular-value-squared law, by three exact
// routes: the binomial closed form, the weighted pillar sum
// sum_t y^{2k-t} f_{t-1}(k), and the cubic/quadratic convolution recursion
// for the generating function h(x) = 1 + sum m_k x^k.

#include <span>
#include <vector>

#include "lagcov/combinatorics.hpp"
#include "lagcov/exact.hpp"

namespace lagcov {

// Exact positive aspect ratio y = p/T.
class AspectRatio {
 public:
  // Throws DomainError unless y > 0.
  explicit AspectRatio(Rational y);

  const Rational& value() const { return y_; }
  double to_double() const { return y_.get_d(); }

 private:
  Rational y_;
};

struct MomentSequence {
  Rational y;
  std::vector<Rational> values;  // values[k-1] = m_k

  int order() const { return static_cast<int>(values.size()); }
  const Rational& at(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
};

// sum_{i=0}^{k-1} (1/k) C(2k,i) C(k,i+1) y^{2k-1-i}; DomainError for k <= 0.
Rational moment_closed_form(int k, const AspectRatio& y);

// sum_{t=1}^{k} y^{2k-t} f_{t-1}(k); TableTooSmallError when k > table.max_k().
Rational moment_from_pillars(int k, const AspectRatio& y, const PillarCountTable& table);

// m_1..m_K from m_k = y^2 (m*m*m)_{k-1} + (y - y^2) (m*m)_{k-1}, m_0 = 1.
MomentSequence moment_recursion(int K, const AspectRatio& y);

// Coefficients 0..K of x y^2 h^3 + x (y - y^2) h^2 - h + 1 where
// h = sum_{k<=K} m_k x^k. `moments` holds m_0..m_K.
std::vector<Rational> generating_function_residual(std::span<const Rational> moments,
                                                   const AspectRatio& y);
std::vector<Rational> generating_function_residual(int K, const AspectRatio& y);

// m_k <= b(y)^k for all k <= K, with relative slack 1e-12.
bool moment_bound_check(int K, double y);

// Double-precision moments m_1..m_K (closed form with exact binomials).
std::vector<double> moments_numeric(int K, double y);
// Double-precision recursion route, for the numeric fast path.
std::vector<double> moment_recursion_numeric(int K, double y);

namespace detail {

// c_0 = 1, c_k = cubic_weight (c*c*c)_{k-1} + quadratic_weight (c*c)_{k-1};
// returns c_0..c_K. Running self-convolutions keep the cost at O(K^2).
template <typename T>
std::vector<T> weighted_convolution_recursion(int K, const T& cubic_weight, const T& quadratic_weight) {
  const auto n = static_cast<std::size_t>(K) + 1;
  std::vector<T> c(n, T(0));
  std::vector<T> square(n, T(0));  // (c*c)_n
  std::vector<T> cube(n, T(0));    // (c*c*c)_n
  c[0] = T(1);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t prev = k - 1;
    T sq(0);
    for (std::size_t a = 0; a <= prev; ++a) sq += c[a] * c[prev - a];
    square[prev] = sq;
    T cu(0);
    for (std::size_t a = 0; a <= prev; ++a) cu += c[a] * square[prev - a];
    cube[prev] = cu;
    c[k] = cubic_weight * cube[prev] + quadratic_weight * square[prev];
  }
  return c;
}

}  // namespace detail

}  // namespace lagcov
