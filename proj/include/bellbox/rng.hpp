#pragma once

#include <cstdint>

namespace bellbox {

// Counter-based randomness: every draw is a pure function of
// (seed, restart, param), so parallel restarts need no shared stream state
// and any restart can be reproduced in isolation.

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t chart_bits(std::uint64_t seed, std::uint64_t restart,
                                          std::uint64_t param) {
    return mix64(mix64(mix64(seed) ^ (restart + 0x749d4928ab4f1d1fULL)) ^
                 (param + 0x1f9840a85d5af5bfULL));
}

// Uniform in [0, 1) with 53 random bits.
inline constexpr double chart_uniform(std::uint64_t seed, std::uint64_t restart,
                                      std::uint64_t param) {
    return static_cast<double>(chart_bits(seed, restart, param) >> 11) * 0x1.0p-53;
}

}  // namespace bellbox
