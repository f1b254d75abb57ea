#include "jigsaw/solver.hpp"

#include <algorithm>
#include <set>

#include "jigsaw/enumerate.hpp"
#include "jigsaw/search.hpp"

namespace jigsaw {

namespace {

using Clock = std::chrono::steady_clock;
using ClassKey = std::vector<PackedPiece>;

class Enumerator {
public:
    Enumerator(const PieceBag& bag, const SolverLimits& limits)
        : search_(bag), limits_(limits), n_(bag.n()), q_(bag.q()),
          scratch_(static_cast<std::size_t>(bag.n() * bag.n())) {
        if (limits_.time_budget.count() > 0) deadline_ = Clock::now() + limits_.time_budget;
    }

    SolutionSet run() {
        dfs();
        SolutionSet out;
        out.raw_count = raw_;
        out.truncated = truncated_;
        out.limit = limits_.class_limit;
        out.stop = stop_;
        out.nodes = nodes_;
        out.distinct_classes.reserve(classes_.size());
        for (const ClassKey& key : classes_) out.distinct_classes.push_back(coloring_from_pieces(n_, q_, key));
        return out;
    }

private:
    bool out_of_budget() {
        ++nodes_;
        if (limits_.node_budget != 0 && nodes_ > limits_.node_budget) {
            stop_ = StopReason::NodeBudget;
            return true;
        }
        if (deadline_ && (nodes_ & 0xfff) == 0 && Clock::now() > *deadline_) {
            stop_ = StopReason::TimeBudget;
            return true;
        }
        return false;
    }

    void leaf() {
        raw_ += 1;
        ClassKey key = search_.model() == ModelVariant::RotationsAllowed
                           ? canonical_serialization(search_.placed(), n_)
                           : ClassKey(search_.placed().begin(), search_.placed().end());
        if (!classes_.contains(key)) {
            if (classes_.size() < limits_.class_limit)
                classes_.insert(std::move(key));
            else
                truncated_ = true;
        }
        if (limits_.stop_after_classes != 0 && classes_.size() >= limits_.stop_after_classes)
            stop_ = StopReason::EarlyExit;
    }

    void dfs() {
        if (out_of_budget()) return;
        if (search_.complete()) {
            leaf();
            return;
        }
        auto& branches = scratch_[static_cast<std::size_t>(search_.filled())];
        search_.branch_set(branches);
        for (PackedPiece tuple : branches) {
            search_.place(tuple);
            dfs();
            search_.undo();
            if (stop_ != StopReason::Exhausted) return;
        }
    }

    AssemblySearch search_;
    SolverLimits limits_;
    int n_;
    int q_;
    std::vector<std::vector<PackedPiece>> scratch_;
    std::set<ClassKey> classes_;
    BigCount raw_ = 0;
    bool truncated_ = false;
    StopReason stop_ = StopReason::Exhausted;
    std::uint64_t nodes_ = 0;
    std::optional<Clock::time_point> deadline_;
};

class Counter {
public:
    Counter(const PieceBag& bag, std::uint64_t budget)
        : search_(bag), budget_(budget), scratch_(static_cast<std::size_t>(bag.n() * bag.n())) {}

    RawCount run() {
        if (search_.cells() == 1) {
            // Single cell: the root is also the last cell.
            ++nodes_;
            count_ += search_.branch_count();
        } else {
            dfs();
        }
        return RawCount{count_, !exhausted_, nodes_};
    }

private:
    void dfs() {
        ++nodes_;
        if (budget_ != 0 && nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        auto& branches = scratch_[static_cast<std::size_t>(search_.filled())];
        search_.branch_set(branches);
        const bool next_is_last = search_.filled() + 2 == search_.cells();
        for (PackedPiece tuple : branches) {
            search_.place(tuple);
            if (next_is_last)
                count_ += search_.branch_count();
            else
                dfs();
            search_.undo();
            if (exhausted_) return;
        }
    }

    AssemblySearch search_;
    std::uint64_t budget_;
    std::vector<std::vector<PackedPiece>> scratch_;
    BigCount count_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

class VertexCounter {
public:
    VertexCounter(const EdgeColoring& c, ModelVariant model, std::uint64_t budget)
        : n_(c.n()), orientations_(model == ModelVariant::RotationsAllowed ? 4 : 1),
          budget_(budget), pieces_(serialize(c)), used_(pieces_.size(), false) {
        placed_.reserve(pieces_.size());
    }

    std::optional<std::uint64_t> run() {
        dfs();
        if (exhausted_) return std::nullopt;
        return leaves_;
    }

private:
    void dfs() {
        if (budget_ != 0 && ++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        const int cell = static_cast<int>(placed_.size());
        if (cell == n_ * n_) {
            ++leaves_;
            return;
        }
        const int row = cell / n_;
        const int col = cell % n_;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (used_[i]) continue;
            for (int k = 0; k < orientations_; ++k) {
                const Piece p = Piece::unpack(rotate_packed(pieces_[i], k));
                if (row > 0 && Piece::unpack(placed_[static_cast<std::size_t>(cell - n_)]).south() != p.north())
                    continue;
                if (col > 0 && Piece::unpack(placed_[static_cast<std::size_t>(cell - 1)]).east() != p.west())
                    continue;
                used_[i] = true;
                placed_.push_back(p.pack());
                dfs();
                placed_.pop_back();
                used_[i] = false;
                if (exhausted_) return;
            }
        }
    }

    int n_;
    int orientations_;
    std::uint64_t budget_;
    std::vector<PackedPiece> pieces_;
    std::vector<bool> used_;
    std::vector<PackedPiece> placed_;
    std::uint64_t leaves_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

void check_limits(const SolverLimits& limits) {
    if (limits.class_limit < 1) throw std::invalid_argument("class limit must be >= 1");
}

}  // namespace

std::string_view stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::Exhausted: return "exhausted";
        case StopReason::EarlyExit: return "early_exit";
        case StopReason::NodeBudget: return "node_budget";
        case StopReason::TimeBudget: return "time_budget";
    }
    return "unknown";
}

std::string_view verdict_reason_name(VerdictReason reason) {
    switch (reason) {
        case VerdictReason::DuplicatePieces: return "DuplicatePieces";
        case VerdictReason::SymmetricPiece: return "SymmetricPiece";
        case VerdictReason::MultipleEdgeColorings: return "MultipleEdgeColorings";
        case VerdictReason::Unique: return "Unique";
    }
    return "unknown";
}

SolutionSet enumerate_assemblies(const PieceBag& bag, const SolverLimits& limits) {
    check_limits(limits);
    if (bag.total() != bag.n() * bag.n()) throw std::invalid_argument("bag mass differs from n^2");
    return Enumerator(bag, limits).run();
}

SolutionSet enumerate_assemblies(const PieceBag& bag, std::size_t limit) {
    SolverLimits limits;
    limits.class_limit = limit;
    return enumerate_assemblies(bag, limits);
}

SolutionSet naive_oracle_count(const PieceBag& bag, std::uint64_t budget) {
    const int n = bag.n();
    const auto cells = static_cast<std::size_t>(n * n);
    const std::vector<PackedPiece> want = bag.sorted_keys();
    const bool rot = bag.model() == ModelVariant::RotationsAllowed;
    std::set<ClassKey> classes;
    std::uint64_t raw = 0;
    std::vector<PackedPiece> sorted(cells);
    for_each_coloring(n, bag.q(), budget, [&](const ColoringBatch& batch) {
        for (std::size_t b = 0; b < batch.boards; ++b) {
            const auto keys = rot ? batch.board_canon(b) : batch.board_pieces(b);
            std::copy(keys.begin(), keys.end(), sorted.begin());
            std::sort(sorted.begin(), sorted.end());
            if (sorted != want) continue;
            ++raw;
            const auto pieces = batch.board_pieces(b);
            classes.insert(rot ? canonical_serialization(pieces, n) : ClassKey(pieces.begin(), pieces.end()));
        }
    });
    SolutionSet out;
    out.raw_count = raw;
    out.limit = classes.size();
    for (const ClassKey& key : classes) out.distinct_classes.push_back(coloring_from_pieces(n, bag.q(), key));
    return out;
}

RawCount count_raw_assemblies(const PieceBag& bag, std::uint64_t node_budget) {
    return Counter(bag, node_budget).run();
}

EdgeDecision decide_unique_edge(const PieceBag& bag, const SolverLimits& limits) {
    SolverLimits early = limits;
    early.class_limit = std::max<std::size_t>(2, limits.class_limit);
    early.stop_after_classes = 2;
    const SolutionSet set = enumerate_assemblies(bag, early);
    EdgeDecision decision;
    decision.classes_found = set.distinct_classes.size();
    decision.stop = set.stop;
    if (set.stop == StopReason::EarlyExit)
        decision.unique = false;
    else if (set.stop == StopReason::Exhausted)
        decision.unique = set.distinct_classes.size() == 1;
    return decision;
}

bool has_unique_edge_assembly(const EdgeColoring& c, ModelVariant model) {
    return decide_unique_edge(extract_bag(c, model)).unique.value();
}

AssemblyVerdict vertex_verdict(const PieceBag& bag, bool unique_edge) {
    AssemblyVerdict verdict;
    verdict.unique_edge = unique_edge;
    if (bag.n() == 1) {
        verdict.unique_vertex = unique_edge;
        verdict.reason = unique_edge ? VerdictReason::Unique : VerdictReason::MultipleEdgeColorings;
        return verdict;
    }
    const bool duplicates = std::any_of(bag.counts().begin(), bag.counts().end(),
                                        [](const auto& kv) { return kv.second > 1; });
    const bool symmetric = bag.model() == ModelVariant::RotationsAllowed &&
                           std::any_of(bag.counts().begin(), bag.counts().end(), [](const auto& kv) {
                               return canonicalize_piece(kv.first).orbit < 4;
                           });
    if (duplicates)
        verdict.reason = VerdictReason::DuplicatePieces;
    else if (symmetric)
        verdict.reason = VerdictReason::SymmetricPiece;
    else if (!unique_edge)
        verdict.reason = VerdictReason::MultipleEdgeColorings;
    else
        verdict.reason = VerdictReason::Unique;
    verdict.unique_vertex = verdict.reason == VerdictReason::Unique;
    return verdict;
}

AssemblyVerdict vertex_uniqueness(const EdgeColoring& c, ModelVariant model) {
    const PieceBag bag = extract_bag(c, model);
    return vertex_verdict(bag, decide_unique_edge(bag).unique.value());
}

std::optional<std::uint64_t> count_vertex_assemblies(const EdgeColoring& c, ModelVariant model,
                                                     std::uint64_t node_budget) {
    return VertexCounter(c, model, node_budget).run();
}

std::optional<bool> vertex_uniqueness_oracle(const EdgeColoring& c, ModelVariant model,
                                             std::uint64_t node_budget) {
    const auto count = count_vertex_assemblies(c, model, node_budget);
    if (!count) return std::nullopt;
    return *count == (model == ModelVariant::RotationsAllowed ? 4u : 1u);
}

}  // namespace jigsaw
