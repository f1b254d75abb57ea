#include <algorithm>

#include "jigsaw/kernels.hpp"

namespace jigsaw::kernels::scalar {

void pack(std::span<const Color> edges, std::span<const std::int32_t> north,
          std::span<const std::int32_t> east, std::span<const std::int32_t> south,
          std::span<const std::int32_t> west, std::span<PackedPiece> out) {
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (PackedPiece{edges[static_cast<std::size_t>(north[i])]} << 24) |
                 (PackedPiece{edges[static_cast<std::size_t>(east[i])]} << 16) |
                 (PackedPiece{edges[static_cast<std::size_t>(south[i])]} << 8) |
                 PackedPiece{edges[static_cast<std::size_t>(west[i])]};
    }
}

void canonicalize(std::span<const PackedPiece> in, std::span<PackedPiece> canon,
                  std::span<std::uint8_t> orbit) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        const PackedPiece x = in[i];
        const PackedPiece r1 = rotate_packed(x, 1);
        const PackedPiece r2 = rotate_packed(x, 2);
        const PackedPiece r3 = rotate_packed(x, 3);
        canon[i] = std::min(std::min(x, r1), std::min(r2, r3));
        orbit[i] = static_cast<std::uint8_t>(x == r1 ? 1 : x == r2 ? 2 : 4);
    }
}

}  // namespace jigsaw::kernels::scalar
