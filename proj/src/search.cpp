#include "jigsaw/search.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace jigsaw {

namespace {

constexpr std::uint32_t north_of(PackedPiece p) { return p >> 24; }
constexpr std::uint32_t east_of(PackedPiece p) { return (p >> 16) & 0xffu; }
constexpr std::uint32_t south_of(PackedPiece p) { return (p >> 8) & 0xffu; }
constexpr std::uint32_t west_of(PackedPiece p) { return p & 0xffu; }

}  // namespace

AssemblySearch::AssemblySearch(const PieceBag& bag) : n_(bag.n()), model_(bag.model()) {
    std::vector<Candidate> base;
    for (const auto& [type, count] : bag.counts()) {
        const int index = static_cast<int>(types_.size());
        types_.push_back(type.pack());
        remaining_.push_back(count);
        if (model_ == ModelVariant::FixedOrientation) {
            base.push_back({0, type.pack(), index});
            continue;
        }
        // Distinct rotations only: symmetric types must not repeat a tuple.
        std::set<PackedPiece> rotations;
        for (int k = 0; k < 4; ++k) rotations.insert(rotate_packed(type.pack(), k));
        for (PackedPiece t : rotations) base.push_back({0, t, index});
    }

    auto make = [&](auto key_fn) {
        std::vector<Candidate> out = base;
        for (auto& c : out) c.key = key_fn(c.tuple);
        std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
            return a.key != b.key ? a.key < b.key : a.tuple < b.tuple;
        });
        return out;
    };
    any_ = make([](PackedPiece) { return 0u; });
    by_w_ = make([](PackedPiece t) { return west_of(t); });
    by_n_ = make([](PackedPiece t) { return north_of(t); });
    by_nw_ = make([](PackedPiece t) { return (north_of(t) << 8) | west_of(t); });

    placed_.reserve(static_cast<std::size_t>(cells()));
    placed_type_.reserve(static_cast<std::size_t>(cells()));
}

std::span<const AssemblySearch::Candidate> AssemblySearch::candidates_for_next() const {
    const int cell = filled();
    const int row = cell / n_;
    const int col = cell % n_;
    const std::vector<Candidate>* index = &any_;
    std::uint32_t key = 0;
    if (row > 0 && col > 0) {
        index = &by_nw_;
        key = (south_of(placed_[static_cast<std::size_t>(cell - n_)]) << 8) |
              east_of(placed_[static_cast<std::size_t>(cell - 1)]);
    } else if (row > 0) {
        index = &by_n_;
        key = south_of(placed_[static_cast<std::size_t>(cell - n_)]);
    } else if (col > 0) {
        index = &by_w_;
        key = east_of(placed_[static_cast<std::size_t>(cell - 1)]);
    } else {
        return *index;
    }
    auto lo = std::lower_bound(index->begin(), index->end(), key,
                               [](const Candidate& c, std::uint32_t k) { return c.key < k; });
    auto hi = std::upper_bound(lo, index->end(), key,
                               [](std::uint32_t k, const Candidate& c) { return k < c.key; });
    return {lo, hi};
}

void AssemblySearch::branch_set(std::vector<PackedPiece>& out) const {
    out.clear();
    if (complete()) return;
    for (const Candidate& c : candidates_for_next())
        if (remaining_[static_cast<std::size_t>(c.type)] > 0) out.push_back(c.tuple);
}

std::size_t AssemblySearch::branch_count() const {
    if (complete()) return 0;
    std::size_t count = 0;
    for (const Candidate& c : candidates_for_next())
        count += remaining_[static_cast<std::size_t>(c.type)] > 0 ? 1 : 0;
    return count;
}

int AssemblySearch::type_of(PackedPiece tuple) const {
    const PackedPiece key = model_ == ModelVariant::RotationsAllowed
                                ? std::min({tuple, rotate_packed(tuple, 1), rotate_packed(tuple, 2),
                                            rotate_packed(tuple, 3)})
                                : tuple;
    auto it = std::lower_bound(types_.begin(), types_.end(), key);
    if (it == types_.end() || *it != key) throw std::invalid_argument("tuple is not a bag piece");
    return static_cast<int>(it - types_.begin());
}

void AssemblySearch::place(PackedPiece tuple) {
    const int type = type_of(tuple);
    if (remaining_[static_cast<std::size_t>(type)] == 0)
        throw std::invalid_argument("no piece of this type left in the bag");
    --remaining_[static_cast<std::size_t>(type)];
    placed_.push_back(tuple);
    placed_type_.push_back(type);
}

void AssemblySearch::undo() {
    ++remaining_[static_cast<std::size_t>(placed_type_.back())];
    placed_.pop_back();
    placed_type_.pop_back();
}

}  // namespace jigsaw
