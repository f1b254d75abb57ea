#pragma once

// Puzzle sample space: edge colorings of an n x n board, the pieces cut
// from them, the rotation action, and canonical forms for both the
// rotation-allowed and the fixed-orientation model.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jigsaw {

using Color = std::uint8_t;

// Colors are stored in one byte; the packed piece layout relies on it.
inline constexpr int kMaxColors = 256;

// A piece packed as N<<24 | E<<16 | S<<8 | W. Unsigned order on packed
// values equals lexicographic order on the (N, E, S, W) tuple.
using PackedPiece = std::uint32_t;

enum class ModelVariant { RotationsAllowed, FixedOrientation };

std::string_view model_name(ModelVariant model);  // "rot" | "fixed"
ModelVariant parse_model(std::string_view name);  // throws std::invalid_argument

struct Piece {
    std::array<Color, 4> edges{};  // north, east, south, west

    Color north() const { return edges[0]; }
    Color east() const { return edges[1]; }
    Color south() const { return edges[2]; }
    Color west() const { return edges[3]; }

    PackedPiece pack() const {
        return (PackedPiece{edges[0]} << 24) | (PackedPiece{edges[1]} << 16) |
               (PackedPiece{edges[2]} << 8) | PackedPiece{edges[3]};
    }
    static Piece unpack(PackedPiece p) {
        return Piece{{static_cast<Color>(p >> 24), static_cast<Color>(p >> 16),
                      static_cast<Color>(p >> 8), static_cast<Color>(p)}};
    }

    auto operator<=>(const Piece&) const = default;
};

struct CanonicalPiece {
    Piece edges;
    int orbit = 4;  // r(J): number of distinct rotations, 1, 2 or 4

    auto operator<=>(const CanonicalPiece&) const = default;
};

// Clockwise quarter turn of a packed piece: (N,E,S,W) -> (W,N,E,S).
constexpr PackedPiece rotate_packed(PackedPiece p, int quarter_turns = 1) {
    const unsigned shift = 8u * static_cast<unsigned>(quarter_turns & 3);
    return shift == 0 ? p : (p >> shift) | (p << (32u - shift));
}

// Full-board edge coloring. h holds the (n+1) x n horizontal edges (h(r, c)
// is the edge above cell (r, c); row n is the bottom boundary), v holds the
// n x (n+1) vertical edges (v(r, c) is the edge left of cell (r, c); column
// n is the right boundary). Both grids are row-major.
class EdgeColoring {
public:
    EdgeColoring(int n, int q);  // all edges color 0
    EdgeColoring(int n, int q, std::vector<Color> h, std::vector<Color> v);

    int n() const { return n_; }
    int q() const { return q_; }

    Color h(int row, int col) const { return h_[static_cast<std::size_t>(row * n_ + col)]; }
    Color v(int row, int col) const { return v_[static_cast<std::size_t>(row * (n_ + 1) + col)]; }
    void set_h(int row, int col, Color color);
    void set_v(int row, int col, Color color);

    std::span<const Color> h_grid() const { return h_; }
    std::span<const Color> v_grid() const { return v_; }

    std::size_t edge_count() const { return h_.size() + v_.size(); }

    bool operator==(const EdgeColoring&) const = default;

private:
    int n_;
    int q_;
    std::vector<Color> h_;
    std::vector<Color> v_;
};

// Seeded i.i.d. uniform coloring of all 2n(n+1) edges. Edges are drawn h
// row-major first, then v row-major, from mt19937_64 seeded with `seed`.
EdgeColoring generate_puzzle(int n, int q, std::uint64_t seed);

Piece piece_at(const EdgeColoring& c, int row, int col);

// Row-major sequence of packed pieces. This is the serialization used for
// every lexicographic comparison of colorings.
std::vector<PackedPiece> serialize(const EdgeColoring& c);

// Inverse of serialize. Throws if adjacent pieces disagree on a shared edge.
EdgeColoring coloring_from_pieces(int n, int q, std::span<const PackedPiece> pieces);

// Rotates a row-major piece array of an n x n board clockwise by one quarter.
void rotate_serialized(std::span<const PackedPiece> in, int n, std::span<PackedPiece> out);

EdgeColoring rotate_coloring(const EdgeColoring& c, int quarter_turns);

// Lexicographically minimal serialization among the 4 board rotations.
EdgeColoring canonical_coloring(const EdgeColoring& c);
std::vector<PackedPiece> canonical_serialization(std::span<const PackedPiece> pieces, int n);

// Number of quarter-turn rotations k in {0..3} that fix the coloring: 1, 2 or 4.
int symmetry_order(const EdgeColoring& c);
int symmetry_order(std::span<const PackedPiece> pieces, int n);

Piece rotate_piece(const Piece& p, int quarter_turns);
CanonicalPiece canonicalize_piece(const Piece& p);

// The BOX: multiset of piece types. Keys are canonical pieces under
// RotationsAllowed and raw pieces under FixedOrientation.
class PieceBag {
public:
    PieceBag(int n, int q, ModelVariant model, std::map<Piece, int> counts);

    int n() const { return n_; }
    int q() const { return q_; }
    ModelVariant model() const { return model_; }
    const std::map<Piece, int>& counts() const { return counts_; }
    int total() const;
    int count(const Piece& type) const;

    // Sorted packed keys with multiplicity, the form the oracles compare against.
    std::vector<PackedPiece> sorted_keys() const;

    bool operator==(const PieceBag&) const = default;

private:
    int n_;
    int q_;
    ModelVariant model_;
    std::map<Piece, int> counts_;
};

PieceBag extract_bag(const EdgeColoring& c, ModelVariant model);

struct PieceTypeCensus {
    std::uint64_t count_r1 = 0;
    std::uint64_t count_r2 = 0;
    std::uint64_t count_r4 = 0;
    std::uint64_t total = 0;

    bool operator==(const PieceTypeCensus&) const = default;
};

PieceTypeCensus piece_type_census(std::uint64_t q);

// E[X_J] = r(J) n^2 / q^4.
double expected_multiplicity(int orbit, int n, int q);

}  // namespace jigsaw
