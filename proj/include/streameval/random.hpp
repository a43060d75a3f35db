#pragma once

#include <cstdint>
#include <random>

namespace streameval {

// All stochastic components draw through these helpers instead of <random>
// distributions, whose output is implementation-defined. Same seed, same stream,
// on every platform.

// Uniform double in [0, 1) with 53 bits of precision.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
    return unit_double(rng) < p;
}

// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace streameval
