#include "jigsaw/rng.hpp"

#include <limits>
#include <stdexcept>

namespace jigsaw {

std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Largest multiple of bound representable; draws at or above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine();
    while (x >= limit) x = engine();
    return x % bound;
}

std::uint64_t derive_seed(std::uint64_t master_seed, int n, int q, std::uint64_t trial_index) {
    if (n < 0 || n >= (1 << 12)) throw std::out_of_range("derive_seed: n outside [0, 4096)");
    if (q < 0 || q >= (1 << 20)) throw std::out_of_range("derive_seed: q outside [0, 2^20)");
    if (trial_index >= (1ULL << 32)) throw std::out_of_range("derive_seed: trial outside [0, 2^32)");
    const std::uint64_t packed = (static_cast<std::uint64_t>(n) << 52) |
                                 (static_cast<std::uint64_t>(q) << 32) | trial_index;
    return splitmix64_mix(splitmix64_mix(master_seed) ^ packed);
}

}  // namespace jigsaw
