#pragma once

// Exact-arithmetic eigenvalue oracle for small symmetric matrices: the
// characteristic polynomial is expanded with integer arithmetic
// (Faddeev-LeVerrier) and its real roots are isolated by Sturm sequences with
// exact sign evaluation at dyadic points. Shares nothing with the
// Householder/QL eigensolver it is used to check.

#include <vector>

#include "lagcov/exact.hpp"
#include "lagcov/matrix.hpp"

namespace lagcov::oracle {

// Coefficients c_0..c_n of det(lambda I - A), c_n = 1.
std::vector<Integer> characteristic_polynomial(const std::vector<std::vector<Integer>>& a);

// Distinct real roots of an integer polynomial (coefficient i of x^i),
// ascending, each located to an interval narrower than `width`.
std::vector<double> real_roots(const std::vector<Integer>& poly, double width = 1e-12);

// Eigenvalues (ascending) of a symmetric matrix whose entries are exact
// multiples of 1/denominator. Throws std::invalid_argument if an entry is
// not, or if the spectrum has repeated eigenvalues (the Sturm route reports
// distinct roots only).
std::vector<double> exact_symmetric_eigenvalues(const Matrix& a, long denominator);

}  // namespace lagcov::oracle
