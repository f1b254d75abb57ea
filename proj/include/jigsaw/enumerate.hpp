#pragma once

// Exhaustive walk over every coloring of an n x n board, in batches laid
// out for the piece kernels.

#include <cstdint>
#include <functional>
#include <span>

#include "jigsaw/errors.hpp"
#include "jigsaw/model.hpp"

namespace jigsaw {

// Number of colorings q^(2n(n+1)); throws BudgetExceeded above `budget`.
std::uint64_t coloring_space_size(int n, int q, std::uint64_t budget);

struct ColoringBatch {
    int n = 0;
    int q = 0;
    std::uint64_t first_index = 0;  // index of board 0 in odometer order
    std::size_t boards = 0;
    std::size_t stride = 0;               // edge bytes per board: h grid then v grid
    std::span<const Color> edges;         // boards * stride bytes
    std::span<const PackedPiece> pieces;  // boards * n^2, row-major per board
    std::span<const PackedPiece> canon;   // canonical form of each piece
    std::span<const std::uint8_t> orbit;

    std::span<const Color> board_edges(std::size_t b) const { return edges.subspan(b * stride, stride); }
    std::span<const PackedPiece> board_pieces(std::size_t b) const {
        const auto cells = static_cast<std::size_t>(n * n);
        return pieces.subspan(b * cells, cells);
    }
    std::span<const PackedPiece> board_canon(std::size_t b) const {
        const auto cells = static_cast<std::size_t>(n * n);
        return canon.subspan(b * cells, cells);
    }
};

// Coloring index: edge k (h row-major, then v row-major) is digit k in base q,
// edge 0 least significant.
void for_each_coloring(int n, int q, std::uint64_t budget,
                       const std::function<void(const ColoringBatch&)>& visit);

EdgeColoring coloring_from_edges(int n, int q, std::span<const Color> edges);

}  // namespace jigsaw
