#pragma once

// Counter-based noise for reproducible, order-independent ensembles.
//
// Every draw is a pure function of (stream seed, counter): the counter-th
// output of SplitMix64 started from the stream seed,
//
//   bits(seed, c) = mix(seed + (c + 1) * 0x9E3779B97F4A7C15),
//
// with mix the SplitMix64 finalizer. Entry (i, t) of a p x n block uses
// counters 2c and 2c + 1, c = i * n + t, so any entry can be regenerated in
// isolation. Replicate r of an ensemble uses stream seed bits(master, r).

#include <cstdint>
#include <string>
#include <string_view>

#include "lagcov/matrix.hpp"

namespace lagcov {

enum class Distribution { kGaussian, kRademacher, kUniform };

// "gaussian" | "rademacher" | "uniform"; DomainError otherwise.
Distribution parse_distribution(std::string_view name);
std::string to_string(Distribution d);

std::uint64_t splitmix64_mix(std::uint64_t z);
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter);
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate);

// Mean 0, variance 1 draw for the given entry counter.
//   gaussian:   Box-Muller (cosine branch) on two uniforms in (0, 1)
//   rademacher: sign from the top bit of the first word
//   uniform:    uniform on [-sqrt(3), sqrt(3)]
double noise_entry(Distribution d, std::uint64_t seed, std::uint64_t entry);

// p x n matrix of iid noise entries; DomainError unless p, n >= 1.
Matrix sample_noise(std::size_t p, std::size_t n, Distribution d, std::uint64_t stream_seed);

}  // namespace lagcov
