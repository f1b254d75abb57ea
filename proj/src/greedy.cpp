#include "jigsaw/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "jigsaw/errors.hpp"
#include "jigsaw/parallel.hpp"
#include "jigsaw/rng.hpp"
#include "jigsaw/search.hpp"

namespace jigsaw {

GreedyOutcome greedy_fill(const PieceBag& bag, std::uint64_t seed) {
    AssemblySearch search(bag);
    Engine engine(seed);
    std::vector<PackedPiece> branches;
    BigCount product = 1;
    while (!search.complete()) {
        search.branch_set(branches);
        if (branches.empty()) return GreedyOutcome{false, 0, search.filled()};
        product *= branches.size();
        search.place(branches[uniform_below(engine, branches.size())]);
    }
    return GreedyOutcome{true, std::move(product), search.filled()};
}

EstimatorSummary estimate_raw_count(const PieceBag& bag, std::uint64_t runs, std::uint64_t seed,
                                    unsigned jobs) {
    if (runs < 1) throw std::invalid_argument("estimator needs runs >= 1");
    std::vector<GreedyOutcome> outcomes(runs);
    parallel_for(runs, jobs, [&](std::size_t r) { outcomes[r] = greedy_fill(bag, substream_seed(seed, r)); });

    BigCount sum = 0;
    BigCount sum_sq = 0;
    std::uint64_t successes = 0;
    for (const GreedyOutcome& o : outcomes) {
        sum += o.estimate;
        sum_sq += o.estimate * o.estimate;
        successes += o.success ? 1 : 0;
    }
    EstimatorSummary s;
    s.runs = runs;
    s.success_rate = static_cast<double>(successes) / static_cast<double>(runs);
    s.mean_exact = BigReal(sum) / BigReal(runs);
    s.mean = s.mean_exact.convert_to<double>();
    if (runs > 1) {
        // Sample variance (R sum x^2 - (sum x)^2) / (R (R-1)), exact up to the division.
        const BigCount R = runs;
        const BigCount numerator = R * sum_sq - sum * sum;
        const BigReal variance = BigReal(numerator) / (BigReal(R) * BigReal(R - 1));
        s.std_error = boost::multiprecision::sqrt(variance / BigReal(R)).convert_to<double>();
    }
    return s;
}

double solution_scale_log2(int n, int q) {
    if (q < 2 || q > n)
        throw OutOfRegime("solution scale needs 2 <= q <= n, got n = " + std::to_string(n) +
                          ", q = " + std::to_string(q));
    const double nd = n;
    const double qd = q;
    return nd * nd * std::log2(std::min(qd * qd, nd * nd / (qd * qd)));
}

}  // namespace jigsaw
