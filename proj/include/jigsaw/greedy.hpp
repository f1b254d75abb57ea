#pragma once

// Random greedy placement turned into an unbiased estimator of the raw
// assembly count: each probe multiplies the branch-set sizes it meets along
// one random root-to-leaf path of the exact solver's search tree.

#include <cstdint>

#include "jigsaw/bigcount.hpp"
#include "jigsaw/model.hpp"

namespace jigsaw {

struct GreedyOutcome {
    bool success = false;
    BigCount estimate = 0;  // product of branch sizes; 0 on a dead end
    int path_length = 0;    // cells filled before success or failure
};

GreedyOutcome greedy_fill(const PieceBag& bag, std::uint64_t seed);

struct EstimatorSummary {
    std::uint64_t runs = 0;
    double mean = 0;
    double std_error = 0;
    double success_rate = 0;
    BigReal mean_exact = 0;  // same mean at 50 digits, for estimates beyond double range
};

// Run r uses seed substream_seed(seed, r).
EstimatorSummary estimate_raw_count(const PieceBag& bag, std::uint64_t runs, std::uint64_t seed,
                                    unsigned jobs = 1);

// n^2 log2 min(q^2, n^2/q^2). Requires 2 <= q <= n.
double solution_scale_log2(int n, int q);

}  // namespace jigsaw
