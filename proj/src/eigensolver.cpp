#include "lagcov/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "lagcov/errors.hpp"

namespace lagcov {

Tridiagonal tridiagonalize(Matrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw ShapeError("tridiagonalize needs a square matrix");
  Tridiagonal out;
  out.diagonal.assign(n, 0.0);
  out.off_diagonal.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return out;

  // Fill the upper triangle from the lower so full rows can be used.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i);
  }

  std::vector<double> v(n);
  std::vector<double> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // trailing block size
    // x = A[k+1.., k], read along row k.
    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double xi = a(k, k + 1 + i);
      tail += xi * xi;
    }
    const double x0 = a(k, k + 1);
    out.diagonal[k] = a(k, k);
    if (tail == 0.0) {
      out.off_diagonal[k] = x0;
      continue;
    }
    const double norm = std::sqrt(x0 * x0 + tail);
    const double alpha = x0 > 0.0 ? -norm : norm;
    v[0] = x0 - alpha;
    for (std::size_t i = 1; i < m; ++i) v[i] = a(k, k + 1 + i);
    const double vtv = v[0] * v[0] + tail;
    const double beta = 2.0 / vtv;

    // p = beta * A22 v, then w = p - (beta/2)(p.v) v.
    double pv = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = a.row(k + 1 + i).subspan(k + 1, m);
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += row[j] * v[j];
      w[i] = beta * acc;
      pv += w[i] * v[i];
    }
    const double K = 0.5 * beta * pv;
    for (std::size_t i = 0; i < m; ++i) w[i] -= K * v[i];
    // A22 -= v w^T + w v^T
    for (std::size_t i = 0; i < m; ++i) {
      auto row = a.row(k + 1 + i).subspan(k + 1, m);
      const double vi = v[i];
      const double wi = w[i];
      for (std::size_t j = 0; j < m; ++j) row[j] -= vi * w[j] + wi * v[j];
    }
    out.off_diagonal[k] = alpha;
  }
  if (n >= 2) {
    out.diagonal[n - 2] = a(n - 2, n - 2);
    out.off_diagonal[n - 2] = a(n - 1, n - 2);
  }
  out.diagonal[n - 1] = a(n - 1, n - 1);
  return out;
}

std::vector<double> tridiagonal_eigenvalues(Tridiagonal t) {
  auto& d = t.diagonal;
  const std::size_t n = d.size();
  if (t.off_diagonal.size() + 1 != n && !(n == 0 && t.off_diagonal.empty())) {
    throw ShapeError("tridiagonal off-diagonal must have n-1 entries");
  }
  if (n <= 1) return d;
  std::vector<double> e(t.off_diagonal);
  e.push_back(0.0);

  constexpr double kRelTol = 1e-14;
  constexpr int kMaxIterations = 50;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max({scale, std::abs(d[i]), std::abs(e[i])});
  // Below this an off-diagonal entry cannot move any eigenvalue visibly.
  const double floor = 1e-18 * scale;

  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kRelTol * dd || std::abs(e[m]) <= floor) break;
      }
      if (m != l) {
        if (iterations++ == kMaxIterations) {
          throw EigensolverError("implicit QL did not converge for eigenvalue " + std::to_string(l) +
                                 " within " + std::to_string(kMaxIterations) + " iterations");
        }
        // Wilkinson-type shift from the leading 2x2 block.
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return d;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw EigensolverError("symmetric_eigenvalues: non-finite matrix entry");
  }
  auto values = tridiagonal_eigenvalues(tridiagonalize(a));
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

}  // namespace lagcov
