#include "lagcov/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "lagcov/errors.hpp"

namespace lagcov {

namespace {

// 15-point Kronrod abscissae on [0,1] (symmetric), with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    // Gauss nodes are the odd-indexed Kronrod nodes.
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureOptions& options) {
  if (!(hi > lo)) {
    if (hi == lo) return {};
    throw DomainError("integrate_adaptive: need lo <= hi");
  }
  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod(f, lo, hi));
  double value = panels.top().value;
  double error = panels.top().error;
  int count = 1;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    if (count >= options.max_panels) {
      throw QuadratureError("adaptive quadrature did not reach tolerance after " +
                            std::to_string(count) + " panels (error estimate " +
                            std::to_string(error) + ")");
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw QuadratureError("adaptive quadrature panel collapsed below double resolution");
    }
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Re-sum to drop the drift from incremental updates.
  double total = 0.0;
  double total_error = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  for (const auto& p : all) {
    total += p.value;
    total_error += p.error;
  }
  return {total, total_error, count};
}

QuadratureResult integrate_sqrt_endpoints_theta(const std::function<double(double)>& f, double a,
                                                double b, double theta_lo, double theta_hi,
                                                const QuadratureOptions& options) {
  const double width = b - a;
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double x = a + width * s * s;
    return f(x) * width * std::sin(2.0 * theta);
  };
  return integrate_adaptive(integrand, theta_lo, theta_hi, options);
}

QuadratureResult integrate_sqrt_endpoints(const std::function<double(double)>& f, double a, double b,
                                          const QuadratureOptions& options) {
  return integrate_sqrt_endpoints_theta(f, a, b, 0.0, std::numbers::pi / 2.0, options);
}

}  // namespace lagcov
