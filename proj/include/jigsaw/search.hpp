#pragma once

// Incremental fill state shared by the exact solver and the greedy
// estimator. Cells are filled in row-major order; the branch set at a cell
// is the sorted set of distinct (N,E,S,W) tuples realizable by some piece
// still in the bag that matches the already placed north and west edges.

#include <span>
#include <vector>

#include "jigsaw/model.hpp"

namespace jigsaw {

class AssemblySearch {
public:
    explicit AssemblySearch(const PieceBag& bag);

    int n() const { return n_; }
    int cells() const { return n_ * n_; }
    int filled() const { return static_cast<int>(placed_.size()); }
    bool complete() const { return filled() == cells(); }

    // Replaces `out` with the branch set of the next empty cell.
    void branch_set(std::vector<PackedPiece>& out) const;
    std::size_t branch_count() const;

    // `tuple` must come from the current branch set.
    void place(PackedPiece tuple);
    void undo();

    std::span<const PackedPiece> placed() const { return placed_; }
    ModelVariant model() const { return model_; }

private:
    struct Candidate {
        std::uint32_t key;  // constraint key for the index it lives in
        PackedPiece tuple;
        int type;
    };

    std::span<const Candidate> candidates_for_next() const;
    int type_of(PackedPiece tuple) const;

    int n_;
    ModelVariant model_;
    std::vector<PackedPiece> types_;  // sorted bag keys
    std::vector<int> remaining_;
    std::vector<Candidate> any_;    // no constraint (cell 0)
    std::vector<Candidate> by_w_;   // top row
    std::vector<Candidate> by_n_;   // left column
    std::vector<Candidate> by_nw_;  // interior
    std::vector<PackedPiece> placed_;
    std::vector<int> placed_type_;
};

}  // namespace jigsaw
