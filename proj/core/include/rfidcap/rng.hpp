#pragma once

/******************************************************************************
 * Deterministic random streams.
 *
 * Everything that samples takes an Rng. Child streams are derived from the
 * parent's seed and explicit ids (unit, message index, trial index, ...), not
 * from engine state, so independent streams can be reproduced in any order.
 * Distribution transforms are hand-rolled (inverse CDF, Box-Muller) to keep
 * outputs independent of the standard library's unspecified algorithms.
 ******************************************************************************/

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rfidcap {

using RngSeed = std::uint64_t;

// Fixed default so runs are reproducible unless entropy seeding is requested.
inline constexpr RngSeed kDefaultSeed = 0x5eed0f1d5ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(RngSeed seed) : seed_(seed), eng_(splitmix64(seed)) {}

    RngSeed seed() const { return seed_; }

    // Child stream keyed by (seed, stream, index); independent of this
    // object's consumption state.
    Rng derive(std::uint64_t stream, std::uint64_t index = 0) const {
        std::uint64_t s = splitmix64(seed_ ^ splitmix64(stream));
        return Rng(splitmix64(s ^ splitmix64(index)));
    }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Unbiased uniform on [0, bound); bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % bound;
    }

    // Standard normal via Box-Muller; two uniforms per value, no cached twin.
    double gaussian() {
        const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    RngSeed seed_;
    std::mt19937_64 eng_;
};

// Categorical sampler by inverse CDF over a fixed probability row.
class CdfSampler {
public:
    CdfSampler() = default;
    explicit CdfSampler(std::span<const double> probs);

    std::size_t operator()(Rng& rng) const;

private:
    std::vector<double> cdf_;
};

} // namespace rfidcap
