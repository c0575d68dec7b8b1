#pragma once

#include <cstdint>
#include <random>

namespace duc {

/// splitmix64 step; used only to derive independent seeds, never as the
/// sampling generator itself.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e9b5ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed lanes: every consumer of randomness draws its seed from
/// derive_seed(master, lane, index), so runs are reproducible and lanes are
/// independent of evaluation order.
enum class SeedLane : std::uint64_t {
    Gate = 1,
    Operator = 2,
    Realization = 3,
    Perturbation = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, SeedLane lane, std::uint64_t index = 0) {
    std::uint64_t s = master ^ (0xd1342543de82ef95ull * static_cast<std::uint64_t>(lane));
    splitmix64(s);
    s ^= 0x2545f4914f6cdd1dull * (index + 1);
    return splitmix64(s);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace duc
