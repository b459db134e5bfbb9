#include "lagcov/noise.hpp"

#include <cmath>
#include <numbers>

#include "lagcov/errors.hpp"

namespace lagcov {

Distribution parse_distribution(std::string_view name) {
  if (name == "gaussian") return Distribution::kGaussian;
  if (name == "rademacher") return Distribution::kRademacher;
  if (name == "uniform") return Distribution::kUniform;
  throw DomainError("unknown distribution '" + std::string(name) +
                    "' (expected gaussian, rademacher or uniform)");
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::kGaussian:
      return "gaussian";
    case Distribution::kRademacher:
      return "rademacher";
    case Distribution::kUniform:
      return "uniform";
  }
  return "unknown";
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64_mix(seed + (counter + 1) * 0x9E3779B97F4A7C15ull);
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate) {
  return counter_bits(master_seed, replicate);
}

namespace {

// Uniform in the open interval (0, 1) from the top 53 bits.
double open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double noise_entry(Distribution d, std::uint64_t seed, std::uint64_t entry) {
  const std::uint64_t first = counter_bits(seed, 2 * entry);
  switch (d) {
    case Distribution::kGaussian: {
      const double u1 = open_unit(first);
      const double u2 = open_unit(counter_bits(seed, 2 * entry + 1));
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    case Distribution::kRademacher:
      return (first >> 63) ? 1.0 : -1.0;
    case Distribution::kUniform:
      return (2.0 * open_unit(first) - 1.0) * std::numbers::sqrt3;
  }
  throw DomainError("unknown distribution");
}

Matrix sample_noise(std::size_t p, std::size_t n, Distribution d, std::uint64_t stream_seed) {
  if (p < 1 || n < 1) throw DomainError("sample_noise needs p, n >= 1");
  Matrix out(p, n);
  for (std::size_t i = 0; i < p; ++i) {
    auto row = out.row(i);
    for (std::size_t t = 0; t < n; ++t) row[t] = noise_entry(d, stream_seed, i * n + t);
  }
  return out;
}

}  // namespace lagcov
