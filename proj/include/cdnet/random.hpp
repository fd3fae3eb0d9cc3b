#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cdnet {

using Rng = std::mt19937_64;

/// Independent generator for realization `stream` of an experiment seeded
/// with `base_seed`. Both words are mixed through std::seed_seq, so nearby
/// seeds and stream indices give unrelated sequences.
inline Rng make_stream(std::uint64_t base_seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x9e3779b9u};
    return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

/// Bernoulli trial. Degenerate probabilities draw nothing.
inline bool bernoulli(Rng& rng, double p)
{
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return uniform01(rng) < p;
}

/// Uniform integer in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace cdnet
