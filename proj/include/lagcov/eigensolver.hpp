#pragma once

#include <vector>

#include "lagcov/matrix.hpp"

namespace lagcov {

struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // off_diagonal[i] couples i and i+1; size n-1
};

// Householder reduction of a symmetric matrix to tridiagonal form by
// orthogonal similarity. Only the lower triangle of `a` is read.
Tridiagonal tridiagonalize(Matrix a);

// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL
// iteration. An off-diagonal entry is deflated once it is below
// 1e-14 * (|d_i| + |d_{i+1}|). Throws EigensolverError after 50 sweeps on one
// eigenvalue. Result is unsorted.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t);

// All eigenvalues of a symmetric matrix, sorted descending. EigensolverError
// on non-finite entries.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

}  // namespace lagcov
