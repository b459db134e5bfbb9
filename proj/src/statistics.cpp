#include "lagcov/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lagcov {

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    // Ties jump together.
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    // Compare both one-sided limits so an atom in F lines up with a tie block.
    const double below = cdf(std::nextafter(sorted[i], -HUGE_VAL));
    const double at = cdf(sorted[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i) / n - below),
                      std::abs(static_cast<double>(j) / n - at)});
    i = j;
  }
  return worst;
}

double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b) {
  const double na = static_cast<double>(sorted_a.size());
  const double nb = static_cast<double>(sorted_b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < sorted_a.size() && j < sorted_b.size()) {
    const double x = std::min(sorted_a[i], sorted_b[j]);
    while (i < sorted_a.size() && sorted_a[i] <= x) ++i;
    while (j < sorted_b.size() && sorted_b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace lagcov
