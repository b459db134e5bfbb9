#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lagcov {

// sup_x |F_n(x) - F(x)| for the empirical distribution of `sorted` (ascending).
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

// sup_x |F_a(x) - F_b(x)| for two ascending samples.
double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);

double mean(std::span<const double> values);
// Sample standard deviation / sqrt(n); 0 when n < 2.
double standard_error(std::span<const double> values);

}  // namespace lagcov
