#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sebot {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; mixes a run seed with stream tags (epoch, layer, ...)
/// so independent random streams never share state.
inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    auto step = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = step(seed);
    for (auto t : tags) h = step(h ^ t);
    return h;
}

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform double strictly inside (0, 1).
inline double uniform_open01(Rng& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

}  // namespace sebot
