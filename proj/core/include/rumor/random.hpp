#pragma once

#include <cstdint>
#include <random>

namespace rumor {

/// Every stochastic routine takes an explicit engine; nothing is global.
using Rng = std::mt19937_64;

/// splitmix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed keyed by (master, a, b). Stable across platforms and
/// independent of the order in which children are created.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix64(mix64(mix64(master) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

// The std distributions are implementation-defined; these are not, so traces
// are reproducible across standard libraries.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) {
    return uniform01(rng) < p;
}

__extension__ using uint128 = unsigned __int128;

/// Uniform integer in [0, n), n > 0. Lemire's nearly-divisionless method.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    auto wide = static_cast<uint128>(rng()) * n;
    auto low = static_cast<std::uint64_t>(wide);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            wide = static_cast<uint128>(rng()) * n;
            low = static_cast<std::uint64_t>(wide);
        }
    }
    return static_cast<std::uint64_t>(wide >> 64);
}

/// Fisher-Yates; portable replacement for std::shuffle.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Rng& rng) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
        const auto j = uniform_index(rng, i);
        std::swap(first[i - 1], first[j]);
    }
}

}  // namespace rumor
