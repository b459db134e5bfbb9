#include "lagcov/matrix_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "lagcov/eigensolver.hpp"
#include "lagcov/errors.hpp"
#include "lagcov/moments.hpp"
#include "lagcov/spectral_law.hpp"
#include "lagcov/statistics.hpp"

namespace lagcov {

void EnsembleConfig::validate() const {
  if (p < 2 || T < 2) throw DomainError("ensemble needs p, T >= 2");
  if (p > kMaxDimension) {
    throw DomainError("p = " + std::to_string(p) + " exceeds the dense limit " +
                      std::to_string(kMaxDimension));
  }
  if (lag < 1) throw DomainError("lag must be >= 1");
  if (replicates < 1) throw DomainError("replicates must be >= 1");
  if (max_moment_order < 1) throw DomainError("moment order must be >= 1");
}

LagCovMatrix build_lag_autocov(const Matrix& noise, std::size_t lag, std::size_t T) {
  if (T < 1 || lag < 1) throw DomainError("build_lag_autocov needs T, s >= 1");
  if (noise.cols() != T + lag) {
    throw ShapeError("noise has " + std::to_string(noise.cols()) + " columns, expected T + s = " +
                     std::to_string(T + lag));
  }
  const std::size_t p = noise.rows();
  // X(i,j) = (1/T) <row_i[s .. s+T), row_j[0 .. T)>, blocked over rows.
  constexpr std::size_t kBlock = 32;
  Matrix x(p, p);
  const double inv_t = 1.0 / static_cast<double>(T);
  for (std::size_t ib = 0; ib < p; ib += kBlock) {
    const std::size_t ie = std::min(p, ib + kBlock);
    for (std::size_t jb = 0; jb < p; jb += kBlock) {
      const std::size_t je = std::min(p, jb + kBlock);
      for (std::size_t i = ib; i < ie; ++i) {
        const double* lead = noise.row(i).data() + lag;
        for (std::size_t j = jb; j < je; ++j) {
          const double* lagged = noise.row(j).data();
          double acc = 0.0;
          for (std::size_t t = 0; t < T; ++t) acc += lead[t] * lagged[t];
          x(i, j) = acc * inv_t;
        }
      }
    }
  }
  return {std::move(x)};
}

Spectrum gram_spectrum(const LagCovMatrix& x) {
  for (double v : x.values.data()) {
    if (!std::isfinite(v)) throw DomainError("gram_spectrum: non-finite entry in X");
  }
  const Matrix a = gram(x.values);
  Spectrum out;
  out.trace = a.trace();
  out.eigenvalues = symmetric_eigenvalues(a);
  if (out.eigenvalues.empty()) return out;
  out.l1 = std::max(out.eigenvalues.front(), 0.0);
  out.min_raw = out.eigenvalues.back();
  for (double& v : out.eigenvalues) {
    if (v < 0.0) {
      if (v < -1e-10 * out.l1) ++out.psd_violations;
      v = 0.0;
      ++out.clamped;
    }
  }
  return out;
}

std::vector<double> empirical_moments(const Spectrum& spectrum, int K) {
  if (K < 1) throw DomainError("empirical_moments needs K >= 1");
  std::vector<double> out(static_cast<std::size_t>(K), 0.0);
  if (spectrum.eigenvalues.empty()) return out;
  for (double v : spectrum.eigenvalues) {
    double power = 1.0;
    for (auto& m : out) {
      power *= v;
      m += power;
    }
  }
  const double p = static_cast<double>(spectrum.eigenvalues.size());
  for (auto& m : out) m /= p;
  return out;
}

std::vector<double> EmpiricalSummary::pooled_eigenvalues() const {
  std::vector<double> pooled;
  for (const auto& r : replicates) pooled.insert(pooled.end(), r.eigenvalues.begin(), r.eigenvalues.end());
  std::sort(pooled.begin(), pooled.end());
  return pooled;
}

namespace {

ReplicateResult run_replicate(const EnsembleConfig& config, std::size_t index) {
  ReplicateResult out;
  out.seed = replicate_seed(config.seed, index);
  const Matrix noise = sample_noise(config.p, config.T + config.lag, config.distribution, out.seed);
  const Spectrum spectrum = gram_spectrum(build_lag_autocov(noise, config.lag, config.T));
  out.moments = empirical_moments(spectrum, config.max_moment_order);
  out.lambda_max = spectrum.l1;
  out.clamped = spectrum.clamped;
  out.psd_violations = spectrum.psd_violations;
  out.min_raw = spectrum.min_raw;
  const double cutoff = kNearZeroRelative * spectrum.l1;
  out.near_zero = static_cast<std::size_t>(std::count_if(
      spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), [cutoff](double v) { return v <= cutoff; }));
  out.eigenvalues = spectrum.eigenvalues;
  return out;
}

}  // namespace

EmpiricalSummary run_ensemble(const EnsembleConfig& config, const SimulationThresholds& thresholds) {
  config.validate();
  const std::size_t reps = config.replicates;
  std::vector<ReplicateResult> results(reps);
  std::vector<std::exception_ptr> failures(reps);

  unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        results[r] = run_replicate(config, r);
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  EmpiricalSummary summary;
  summary.config = config;
  summary.thresholds = thresholds;
  summary.y_T = config.y_T();
  summary.replicates = std::move(results);

  const auto K = static_cast<std::size_t>(config.max_moment_order);
  summary.moments_empirical.assign(K, 0.0);
  std::vector<double> lambda_max;
  lambda_max.reserve(reps);
  std::size_t clamped = 0;
  std::size_t violations = 0;
  for (const auto& r : summary.replicates) {
    for (std::size_t k = 0; k < K; ++k) summary.moments_empirical[k] += r.moments[k];
    lambda_max.push_back(r.lambda_max);
    clamped += r.clamped;
    violations += r.psd_violations;
  }
  for (auto& m : summary.moments_empirical) m /= static_cast<double>(reps);
  summary.lambda_max_mean = mean(lambda_max);
  summary.lambda_max_se = standard_error(lambda_max);

  const AspectRatio exact_y{Rational(Integer(static_cast<unsigned long>(config.p)),
                                     Integer(static_cast<unsigned long>(config.T)))};
  for (int k = 1; k <= config.max_moment_order; ++k) {
    summary.moments_theoretical.push_back(moment_closed_form(k, exact_y).get_d());
  }
  summary.b_theoretical = support_endpoints(summary.y_T).b;

  const LawCdf cdf(summary.y_T);
  // Eigenvalues at roundoff level sit in the atom at zero of the law; compare
  // them as exact zeros.
  std::vector<double> pooled;
  for (const auto& rep : summary.replicates) {
    for (double v : rep.eigenvalues) pooled.push_back(v <= kNearZeroRelative * rep.lambda_max ? 0.0 : v);
  }
  std::sort(pooled.begin(), pooled.end());
  summary.ks_distance = ks_distance(pooled, [&cdf](double x) { return cdf(x); });

  if (clamped > 0) {
    summary.warnings.push_back("clamped " + std::to_string(clamped) + " negative eigenvalues to 0");
  }
  if (violations > 0) {
    summary.warnings.push_back(std::to_string(violations) +
                               " eigenvalues below -1e-10 * lambda_max before clamping");
  }

  const std::size_t checked = std::min<std::size_t>(K, static_cast<std::size_t>(std::max(thresholds.checked_moment_orders, 0)));
  for (std::size_t k = 0; k < checked; ++k) {
    const double rel = std::abs(summary.moments_empirical[k] - summary.moments_theoretical[k]) /
                       summary.moments_theoretical[k];
    summary.moment_rel_error_max = std::max(summary.moment_rel_error_max, rel);
  }
  summary.moments_pass = summary.moment_rel_error_max <= thresholds.moment_rel_tol;
  summary.ks_pass = summary.ks_distance <= thresholds.ks_tol;
  summary.lambda_max_pass = std::abs(summary.lambda_max_mean - summary.b_theoretical) <=
                            thresholds.lambda_max_rel_tol * summary.b_theoretical;
  return summary;
}

}  // namespace lagcov
