#ifndef QPOW_RANDOM_HPP
#define QPOW_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace qpow {

// std::mt19937_64 is bit-exact across standard libraries; the distribution
// helpers below are written out so sampled values are too.
using Rng = std::mt19937_64;
inline constexpr const char* kRngAlgorithm = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection, n > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// Exponential variate with the given rate (inverse CDF).
inline double exponential(Rng& rng, double rate) {
    return -std::log1p(-uniform01(rng)) / rate;
}

} // namespace qpow

#endif // QPOW_RANDOM_HPP
