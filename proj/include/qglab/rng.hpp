#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qglab {

// SplitMix64 finalizer; used to derive independent, reproducible seeds for
// (seed, N, trial, purpose) tuples.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

// Uniform integer in [0, bound) by rejection. std::uniform_int_distribution is
// implementation-defined, which would break cross-platform reproducibility.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
double uniform_unit(std::mt19937_64& rng);
int random_sign(std::mt19937_64& rng);

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace qglab
