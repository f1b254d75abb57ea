#pragma once

// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws use rejection sampling
// so results do not depend on the library's distribution implementations.
// Sub-stream seeds are derived with the splitmix64 finalizer.

#include <cstdint>
#include <random>

namespace jigsaw {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed of the index-th independent stream under `seed`. Injective in index.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64_mix(splitmix64_mix(seed) ^ index);
}

// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound);

// Per-trial seed for sweeps. Injective in (n, q, trial) for n < 2^12,
// q < 2^20, trial < 2^32; throws std::out_of_range otherwise.
std::uint64_t derive_seed(std::uint64_t master_seed, int n, int q, std::uint64_t trial_index);

}  // namespace jigsaw
