#pragma once

#include <cstdint>
#include <random>

namespace pbn {

// SplitMix64 finalizer. Used to derive well-separated engine seeds from a
// (master seed, stream index) pair so parallel chains get disjoint streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) + stream);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64{derive_seed(seed, stream)};
}

// Uniform double in [0, 1) consuming exactly one engine draw. Avoids the
// implementation-defined draw count of std::uniform_real_distribution.
inline double next_unit(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

} // namespace pbn
