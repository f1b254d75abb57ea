#pragma once

// Batched piece kernels used by the exhaustive enumerators and bag
// extraction. Every kernel has a scalar reference variant and, where the
// build and CPU allow it, an AVX2 variant selected at runtime.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "jigsaw/model.hpp"

namespace jigsaw::kernels {

enum class Level { Scalar, Avx2 };

std::string_view level_name(Level level);

// Gathers packed pieces out of a flat edge-byte buffer:
//   out[i] = edges[north[i]]<<24 | edges[east[i]]<<16 | edges[south[i]]<<8 | edges[west[i]]
// The buffer must have at least 3 readable bytes past the largest index.
using PackFn = void (*)(std::span<const Color> edges, std::span<const std::int32_t> north,
                        std::span<const std::int32_t> east, std::span<const std::int32_t> south,
                        std::span<const std::int32_t> west, std::span<PackedPiece> out);

// canon[i] = min over the 4 rotations of in[i]; orbit[i] = r(J) in {1, 2, 4}.
using CanonicalizeFn = void (*)(std::span<const PackedPiece> in, std::span<PackedPiece> canon,
                                std::span<std::uint8_t> orbit);

struct KernelTable {
    Level level;
    PackFn pack;
    CanonicalizeFn canonicalize;
};

// Padding callers of pack must leave after the last addressed edge byte.
inline constexpr std::size_t kGatherPad = 4;

bool level_available(Level level);
const KernelTable& table(Level level);  // throws if unavailable

// Best available level, overridable with JIG_SIMD=scalar|avx2.
const KernelTable& active();
void set_active_level(Level level);

namespace scalar {
void pack(std::span<const Color> edges, std::span<const std::int32_t> north,
          std::span<const std::int32_t> east, std::span<const std::int32_t> south,
          std::span<const std::int32_t> west, std::span<PackedPiece> out);
void canonicalize(std::span<const PackedPiece> in, std::span<PackedPiece> canon,
                  std::span<std::uint8_t> orbit);
}  // namespace scalar

#if defined(JIGSAW_HAVE_AVX2)
namespace avx2 {
void pack(std::span<const Color> edges, std::span<const std::int32_t> north,
          std::span<const std::int32_t> east, std::span<const std::int32_t> south,
          std::span<const std::int32_t> west, std::span<PackedPiece> out);
void canonicalize(std::span<const PackedPiece> in, std::span<PackedPiece> canon,
                  std::span<std::uint8_t> orbit);
}  // namespace avx2
#endif

// Index tables addressing the pieces of `boards` consecutive colorings laid
// out back to back (h grid then v grid, `stride` bytes per board).
struct GatherPlan {
    int n = 0;
    std::size_t stride = 0;
    std::vector<std::int32_t> north, east, south, west;
};

GatherPlan make_gather_plan(int n, std::size_t boards);

}  // namespace jigsaw::kernels
