#include "lagcov/moments.hpp"

#include <cmath>
#include <string>

#include "lagcov/errors.hpp"
#include "lagcov/spectral_law.hpp"

namespace lagcov {

AspectRatio::AspectRatio(Rational y) : y_(std::move(y)) {
  y_.canonicalize();
  if (y_ <= 0) throw DomainError("aspect ratio must be positive, got " + y_.get_str());
}

Rational moment_closed_form(int k, const AspectRatio& y) {
  if (k <= 0) throw DomainError("moment order must be positive, got " + std::to_string(k));
  const auto uk = static_cast<unsigned long>(k);
  Rational sum = 0;
  for (unsigned long i = 0; i < uk; ++i) {
    const Integer weight = binomial(2 * uk, i) * binomial(uk, i + 1);
    sum += Rational(weight) * power(y.value(), 2 * uk - 1 - i);
  }
  sum /= Rational(Integer(k));
  sum.canonicalize();
  return sum;
}

Rational moment_from_pillars(int k, const AspectRatio& y, const PillarCountTable& table) {
  if (k <= 0) throw DomainError("moment order must be positive, got " + std::to_string(k));
  if (k > table.max_k()) {
    throw TableTooSmallError("pillar table covers k <= " + std::to_string(table.max_k()) +
                             ", moment order " + std::to_string(k) + " requested");
  }
  const auto uk = static_cast<unsigned long>(k);
  Rational sum = 0;
  for (int t = 1; t <= k; ++t) {
    sum += Rational(table.f(t - 1, k)) * power(y.value(), 2 * uk - static_cast<unsigned long>(t));
  }
  sum.canonicalize();
  return sum;
}

MomentSequence moment_recursion(int K, const AspectRatio& y) {
  if (K <= 0) throw DomainError("moment order must be positive, got " + std::to_string(K));
  const Rational& v = y.value();
  const Rational cubic = v * v;
  const Rational quadratic = v - v * v;
  auto all = detail::weighted_convolution_recursion<Rational>(K, cubic, quadratic);
  MomentSequence out{v, {}};
  out.values.assign(all.begin() + 1, all.end());
  for (auto& m : out.values) m.canonicalize();
  return out;
}

std::vector<Rational> generating_function_residual(std::span<const Rational> moments,
                                                   const AspectRatio& y) {
  if (moments.empty()) throw DomainError("need at least m_0");
  const std::size_t n = moments.size();
  const Rational& v = y.value();
  // Truncated products h^2, h^3 up to x^{n-1}.
  std::vector<Rational> square(n, Rational(0));
  std::vector<Rational> cube(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) square[i + j] += moments[i] * moments[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) cube[i + j] += moments[i] * square[j];
  }
  std::vector<Rational> residual(n, Rational(0));
  residual[0] = Rational(1) - moments[0];
  for (std::size_t i = 1; i < n; ++i) {
    residual[i] = v * v * cube[i - 1] + (v - v * v) * square[i - 1] - moments[i];
    residual[i].canonicalize();
  }
  return residual;
}

std::vector<Rational> generating_function_residual(int K, const AspectRatio& y) {
  if (K <= 0) throw DomainError("truncation order must be positive, got " + std::to_string(K));
  std::vector<Rational> moments;
  moments.reserve(static_cast<std::size_t>(K) + 1);
  moments.emplace_back(1);
  for (int k = 1; k <= K; ++k) moments.push_back(moment_closed_form(k, y));
  return generating_function_residual(moments, y);
}

std::vector<double> moments_numeric(int K, double y) {
  if (K <= 0) throw DomainError("moment order must be positive, got " + std::to_string(K));
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("aspect ratio must be positive and finite");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    const auto uk = static_cast<unsigned long>(k);
    double sum = 0.0;
    for (unsigned long i = 0; i < uk; ++i) {
      const Integer weight = binomial(2 * uk, i) * binomial(uk, i + 1);
      sum += weight.get_d() * std::pow(y, static_cast<double>(2 * uk - 1 - i));
    }
    out.push_back(sum / k);
  }
  return out;
}

std::vector<double> moment_recursion_numeric(int K, double y) {
  if (K <= 0) throw DomainError("moment order must be positive, got " + std::to_string(K));
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("aspect ratio must be positive and finite");
  auto all = detail::weighted_convolution_recursion<double>(K, y * y, y - y * y);
  return {all.begin() + 1, all.end()};
}

bool moment_bound_check(int K, double y) {
  if (K <= 0) throw DomainError("moment order must be positive, got " + std::to_string(K));
  const double b = support_endpoints(y).b;
  // Exact moments at the exact binary value of y, compared in double.
  const AspectRatio exact_y{Rational(y)};
  for (int k = 1; k <= K; ++k) {
    const double m = moment_closed_form(k, exact_y).get_d();
    const double bound = std::pow(b, k);
    if (m > bound * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace lagcov
