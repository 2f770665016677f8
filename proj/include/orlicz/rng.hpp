#pragma once

#include <cstdint>
#include <random>

namespace orlicz {

// splitmix64 step; used to derive decorrelated per-index seeds from one seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
}

// Deterministic scalar generators. std::uniform_real_distribution and
// std::normal_distribution are not bit-identical across standard libraries,
// so the harness rolls its own from raw engine output.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Box-Muller; discards the paired variate for simplicity.
inline double gaussian(std::mt19937_64& g) {
    double u1 = uniform01(g);
    while (u1 <= 0.0) u1 = uniform01(g);
    const double u2 = uniform01(g);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace orlicz
