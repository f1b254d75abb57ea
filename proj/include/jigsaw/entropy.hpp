#pragma once

// Entropy of the assembled image (IMG) and of the unordered box of pieces
// (BOX): closed forms, exact values by exhaustive enumeration, and Monte
// Carlo estimates. All entropies are in bits.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jigsaw/errors.hpp"
#include "jigsaw/model.hpp"

namespace jigsaw {

enum class EntropyMethod { ClosedForm, ExactEnumeration, MonteCarlo };
std::string_view method_name(EntropyMethod method);

// Per-type multiplicity statistics from a Monte Carlo run.
struct TypeMultiplicity {
    Piece type;
    int orbit = 1;  // r(J) under the rotation model, 1 under fixed orientation
    double mean = 0;
    double std_error = 0;
    double expected = 0;  // E[X_J]
};

struct EntropyReport {
    int n = 1;
    int q = 1;
    ModelVariant model = ModelVariant::RotationsAllowed;
    EntropyMethod method = EntropyMethod::ClosedForm;
    std::optional<double> beta;

    double h_img = 0;
    std::optional<double> h_box;              // exact runs only
    std::optional<double> h_box_subadditive;  // sum_J H(X_J)
    std::optional<double> h_box_subadditive_std_error;
    std::optional<double> h_box_leading_bound;
    std::optional<double> gap;
    std::optional<double> p_unique_edge;  // exact runs only

    // Monte Carlo extras.
    std::uint64_t trials = 0;
    std::optional<double> duplicate_probability;
    std::optional<double> duplicate_probability_std_error;
    std::vector<TypeMultiplicity> multiplicities;

    // Exact-run extras.
    std::uint64_t colorings = 0;
    std::uint64_t distinct_bags = 0;
    std::uint64_t distinct_images = 0;
};

// beta = log q / log n; undefined at n = 1.
std::optional<double> beta_of(int n, int q);

// Rotation model: 2n(n+1) log2 q - 2 + q^-n(n+1) + q^-3n(n+1)/2, exact for all n, q.
// Fixed orientation: 2n(n+1) log2 q.
double h_img_closed_form(int n, int q, ModelVariant model);

// Leading terms of the BOX entropy upper bound. Requires n >= 2 and
// q >= sqrt(n) log2 n; throws OutOfRegime otherwise.
double h_box_leading_bound(int n, int q, ModelVariant model);

// 2 n^2 log2 min(q, n/q), the leading term of the IMG/BOX gap. Requires 2 <= q <= n.
double entropy_gap_leading(int n, int q);

EntropyReport closed_form_report(int n, int q, ModelVariant model);

struct ExactOptions {
    std::uint64_t budget = 1ULL << 25;
    bool with_uniqueness = true;  // solve every distinct bag for P(unique edge)
};

EntropyReport exact_distributions(int n, int q, ModelVariant model, const ExactOptions& options = {});

struct ExperimentParams {
    int n = 1;
    int q = 1;
    ModelVariant model = ModelVariant::RotationsAllowed;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    unsigned jobs = 1;

    std::optional<double> beta() const { return beta_of(n, q); }
};

// Trial t draws the puzzle generate_puzzle(n, q, derive_seed(seed, n, q, t)).
EntropyReport mc_entropy_estimates(const ExperimentParams& params);

// Stable record: fixed key names, numbers rounded to 12 significant digits.
nlohmann::json to_json(const EntropyReport& report);

double round_significant(double x, int digits = 12);

}  // namespace jigsaw
