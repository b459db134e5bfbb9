#include "lagcov/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace lagcov {

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

double Matrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

Matrix gram(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = m.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const auto rj = m.row(j);
      out(i, j) = std::inner_product(ri.begin(), ri.end(), rj.begin(), 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i);
  }
  return out;
}

}  // namespace lagcov
