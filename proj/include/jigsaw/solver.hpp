#pragma once

// Exact enumeration and counting of the assemblies of a piece bag, the
// uniqueness verdicts built on it, and brute-force oracles.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "jigsaw/bigcount.hpp"
#include "jigsaw/errors.hpp"
#include "jigsaw/model.hpp"

namespace jigsaw {

inline constexpr std::uint64_t kDefaultOracleBudget = 1ULL << 25;
inline constexpr std::size_t kDefaultClassLimit = 1'000'000;

struct SolverLimits {
    std::size_t class_limit = kDefaultClassLimit;
    std::size_t stop_after_classes = 0;  // 0: search to completion
    std::uint64_t node_budget = 0;       // 0: unlimited
    std::chrono::milliseconds time_budget{0};  // 0: unlimited
};

enum class StopReason { Exhausted, EarlyExit, NodeBudget, TimeBudget };
std::string_view stop_reason_name(StopReason reason);

struct SolutionSet {
    BigCount raw_count = 0;
    // Rotation-class representatives (canonical colorings) under the rotation
    // model, raw colorings under the fixed model; sorted by serialization.
    std::vector<EdgeColoring> distinct_classes;
    bool truncated = false;
    std::size_t limit = kDefaultClassLimit;
    StopReason stop = StopReason::Exhausted;
    std::uint64_t nodes = 0;

    bool complete() const { return stop == StopReason::Exhausted; }
};

SolutionSet enumerate_assemblies(const PieceBag& bag, const SolverLimits& limits = {});
SolutionSet enumerate_assemblies(const PieceBag& bag, std::size_t limit);

// Same contract as enumerate_assemblies, by testing every coloring of the
// board. Throws BudgetExceeded when q^(2n(n+1)) > budget.
SolutionSet naive_oracle_count(const PieceBag& bag, std::uint64_t budget = kDefaultOracleBudget);

struct RawCount {
    BigCount count = 0;
    bool exact = true;  // false: node budget ran out, count is a lower bound
    std::uint64_t nodes = 0;
};

RawCount count_raw_assemblies(const PieceBag& bag, std::uint64_t node_budget = 0);

// Tri-state uniqueness decision for budgeted callers.
struct EdgeDecision {
    std::optional<bool> unique;  // empty when a budget stopped the search
    std::size_t classes_found = 0;
    StopReason stop = StopReason::Exhausted;
};

EdgeDecision decide_unique_edge(const PieceBag& bag, const SolverLimits& limits = {});
bool has_unique_edge_assembly(const EdgeColoring& c, ModelVariant model);

enum class VerdictReason { DuplicatePieces, SymmetricPiece, MultipleEdgeColorings, Unique };
std::string_view verdict_reason_name(VerdictReason reason);

struct AssemblyVerdict {
    bool unique_edge = false;
    bool unique_vertex = false;
    VerdictReason reason = VerdictReason::Unique;
};

// Characterization for n >= 2: unique vertex assembly iff no duplicate piece
// types, every piece has r(J) = 4 (rotation model only), and the edge
// assembly is unique. `reason` names the first failing condition.
AssemblyVerdict vertex_verdict(const PieceBag& bag, bool unique_edge);
AssemblyVerdict vertex_uniqueness(const EdgeColoring& c,
                                  ModelVariant model = ModelVariant::RotationsAllowed);

// Counts assignments of the physical pieces to cells and orientations that
// fit together. Returns nullopt if the node budget runs out.
std::optional<std::uint64_t> count_vertex_assemblies(const EdgeColoring& c, ModelVariant model,
                                                     std::uint64_t node_budget = 50'000'000);

// Oracle verdict: the valid assignments form a single whole-board rotation
// orbit (4 assignments under rotation, 1 under fixed orientation).
std::optional<bool> vertex_uniqueness_oracle(const EdgeColoring& c, ModelVariant model,
                                             std::uint64_t node_budget = 50'000'000);

}  // namespace jigsaw
