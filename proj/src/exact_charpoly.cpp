#include "lagcov/exact_charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagcov::oracle {

namespace {

using Poly = std::vector<Rational>;  // coefficient i of x^i

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a / b (b nonzero).
Poly remainder(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t offset = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[offset + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// Scales by a positive rational so the coefficients are coprime integers.
std::vector<Integer> primitive(const Poly& p) {
  Integer lcm_den = 1;
  for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(p.size());
  Integer content = 0;
  for (const auto& c : p) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (content > 1) {
    for (auto& v : out) v /= content;
  }
  return out;
}

// Sign of p(num / 2^shift) via the homogenized integer sum.
int sign_at(const std::vector<Integer>& p, const Integer& num, unsigned long shift) {
  if (p.empty()) return 0;
  const std::size_t degree = p.size() - 1;
  Integer acc = 0;
  Integer num_power = 1;
  for (std::size_t i = 0; i <= degree; ++i) {
    Integer term = p[i] * num_power;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), shift * (degree - i));
    acc += term;
    num_power *= num;
  }
  return sgn(acc);
}

int sign_changes(const std::vector<std::vector<Integer>>& chain, const Integer& num, unsigned long shift) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, num, shift);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<Integer> characteristic_polynomial(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("characteristic_polynomial needs a square matrix");
  }
  std::vector<Integer> c(n + 1, Integer(0));
  c[n] = 1;
  using Mat = std::vector<std::vector<Integer>>;
  Mat M(n, std::vector<Integer>(n, Integer(0)));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    Mat next(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Integer acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += a[i][l] * M[l][j];
        next[i][j] = acc;
      }
      next[i][i] += c[n - k + 1];
    }
    M = std::move(next);
    // c_{n-k} = -tr(A M_k) / k
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * M[l][i];
    }
    Integer q;
    mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = -q;
  }
  return c;
}

std::vector<double> real_roots(const std::vector<Integer>& poly, double width) {
  Poly p(poly.begin(), poly.end());
  trim(p);
  if (p.size() < 2) return {};

  // Sturm chain p, p', -rem(...), ...
  std::vector<std::vector<Integer>> chain;
  Poly prev = p;
  Poly cur(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) cur[i - 1] = p[i] * Rational(static_cast<long>(i));
  trim(cur);
  chain.push_back(primitive(prev));
  while (!cur.empty()) {
    chain.push_back(primitive(cur));
    Poly rem = remainder(prev, cur);
    for (auto& v : rem) v = -v;
    prev = std::move(cur);
    cur = std::move(rem);
  }

  // Cauchy bound, rounded up to a power of two.
  double bound = 0.0;
  const double lead = std::abs(p.back().get_d());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, std::abs(p[i].get_d()) / lead);
  bound += 1.0;
  unsigned long shift = 0;
  while (std::ldexp(1.0, static_cast<int>(shift)) * width < 1.0) ++shift;
  // Interval endpoints are integers scaled by 2^-shift.
  Integer hi_num(std::ceil(bound));
  mpz_mul_2exp(hi_num.get_mpz_t(), hi_num.get_mpz_t(), shift);
  Integer lo_num = -hi_num;

  std::vector<double> roots;
  struct Interval {
    Integer lo;
    Integer hi;
    int lo_changes;
    int hi_changes;
  };
  std::vector<Interval> stack;
  stack.push_back({lo_num, hi_num, sign_changes(chain, lo_num, shift), sign_changes(chain, hi_num, shift)});
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const int count = iv.lo_changes - iv.hi_changes;  // distinct roots in (lo, hi]
    if (count <= 0) continue;
    const Integer gap = iv.hi - iv.lo;
    if (gap <= 1 || count == 1) {
      if (gap <= 1) {
        for (int r = 0; r < count; ++r) {
          roots.push_back(std::ldexp(iv.hi.get_d(), -static_cast<int>(shift)));
        }
        continue;
      }
    }
    Integer mid = iv.lo + gap / 2;
    const int mid_changes = sign_changes(chain, mid, shift);
    stack.push_back({mid, iv.hi, mid_changes, iv.hi_changes});
    stack.push_back({iv.lo, mid, iv.lo_changes, mid_changes});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> exact_symmetric_eigenvalues(const Matrix& a, long denominator) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("exact_symmetric_eigenvalues needs a square matrix");
  std::vector<std::vector<Integer>> scaled(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j) * static_cast<double>(denominator);
      if (v != std::round(v)) throw std::invalid_argument("entry is not a multiple of 1/denominator");
      scaled[i][j] = Integer(v);
    }
  }
  auto roots = real_roots(characteristic_polynomial(scaled), 1e-13 * static_cast<double>(denominator));
  if (roots.size() != n) {
    throw std::invalid_argument("characteristic polynomial has repeated roots");
  }
  for (auto& r : roots) r /= static_cast<double>(denominator);
  return roots;
}

}  // namespace lagcov::oracle
