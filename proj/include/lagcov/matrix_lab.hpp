#pragma once

// Monte Carlo side: sample noise, form the lag-s auto-covariance
// X = (1/T) sum_{t=s+1}^{s+T} e_t e_{t-s}^T, take the spectrum of A = X X^T
// and compare empirical statistics with the analytic law at y_T = p/T.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lagcov/matrix.hpp"
#include "lagcov/noise.hpp"

namespace lagcov {

inline constexpr std::size_t kMaxDimension = 2000;
// Eigenvalues at or below this fraction of lambda_max count as zero.
inline constexpr double kNearZeroRelative = 1e-8;

struct EnsembleConfig {
  std::size_t p = 0;
  std::size_t T = 0;
  std::size_t lag = 1;
  Distribution distribution = Distribution::kGaussian;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  int max_moment_order = 4;
  // Worker threads for replicates; 0 means hardware concurrency. Results do
  // not depend on this.
  unsigned threads = 1;

  double y_T() const { return static_cast<double>(p) / static_cast<double>(T); }
  // Throws DomainError on p, T < 2, lag < 1, replicates < 1, order < 1 or
  // p > kMaxDimension.
  void validate() const;
};

struct LagCovMatrix {
  Matrix values;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending, negatives clamped to 0
  double l1 = 0.0;
  double min_raw = 0.0;             // smallest eigenvalue before clamping
  std::size_t clamped = 0;          // eigenvalues raised to 0
  std::size_t psd_violations = 0;   // raw eigenvalues below -1e-10 * l1
  double trace = 0.0;               // trace of A before the eigensolver
};

// `noise` is p x (T + s); column t (1-based) holds e_t. ShapeError when the
// column count is not T + s; DomainError for T < 1 or s < 1.
LagCovMatrix build_lag_autocov(const Matrix& noise, std::size_t lag, std::size_t T);

// Eigenvalues of A = X X^T via Householder tridiagonalization + implicit QL.
Spectrum gram_spectrum(const LagCovMatrix& x);

// (1/p) sum_j lambda_j^k for k = 1..K.
std::vector<double> empirical_moments(const Spectrum& spectrum, int K);

struct ReplicateResult {
  std::uint64_t seed = 0;
  std::vector<double> moments;
  double lambda_max = 0.0;
  std::size_t near_zero = 0;  // eigenvalues <= kNearZeroRelative * lambda_max
  std::size_t clamped = 0;
  std::size_t psd_violations = 0;
  double min_raw = 0.0;
  std::vector<double> eigenvalues;  // descending
};

struct SimulationThresholds {
  double moment_rel_tol = 0.03;
  double ks_tol = 0.05;
  double lambda_max_rel_tol = 0.05;
  int checked_moment_orders = 4;
};

struct EmpiricalSummary {
  EnsembleConfig config;
  double y_T = 0.0;
  std::vector<ReplicateResult> replicates;
  std::vector<double> moments_empirical;    // averaged over replicates
  std::vector<double> moments_theoretical;  // m_k(y_T)
  double lambda_max_mean = 0.0;
  double lambda_max_se = 0.0;
  double b_theoretical = 0.0;
  double ks_distance = 0.0;  // pooled ESD vs law CDF; near-zero eigenvalues taken as 0
  std::vector<std::string> warnings;

  SimulationThresholds thresholds;
  double moment_rel_error_max = 0.0;
  bool moments_pass = false;
  bool ks_pass = false;
  bool lambda_max_pass = false;

  // All eigenvalues of all replicates, ascending.
  std::vector<double> pooled_eigenvalues() const;
};

EmpiricalSummary run_ensemble(const EnsembleConfig& config, const SimulationThresholds& thresholds = {});

}  // namespace lagcov
