#include "jigsaw/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "jigsaw/enumerate.hpp"
#include "jigsaw/parallel.hpp"
#include "jigsaw/rng.hpp"
#include "jigsaw/solver.hpp"

namespace jigsaw {

namespace {

const double kLog2e = std::log2(std::exp(1.0));

struct KeyHash {
    std::size_t operator()(const std::vector<PackedPiece>& key) const noexcept {
        std::uint64_t h = 0x84222325cbf29ce4ULL;
        for (PackedPiece p : key) h = splitmix64_mix(h ^ p);
        return static_cast<std::size_t>(h);
    }
};

// H = log2 N - (1/N) sum c log2 c over the given class weights.
double entropy_from_counts(std::vector<std::uint64_t> counts, std::uint64_t total) {
    std::sort(counts.begin(), counts.end());
    long double acc = 0;
    for (std::uint64_t c : counts)
        if (c > 0) acc += static_cast<long double>(c) * std::log2(static_cast<long double>(c));
    const long double t = static_cast<long double>(total);
    const long double h = std::log2(t) - acc / t;
    return static_cast<double>(std::max<long double>(0, h));
}

// Source edge of every position after one clockwise board turn, in the
// h-then-v edge layout.
std::vector<std::size_t> quarter_turn_sources(int n) {
    const auto side = static_cast<std::size_t>(n);
    const std::size_t grid = side * (side + 1);
    std::vector<std::size_t> src(2 * grid);
    for (std::size_t r = 0; r <= side; ++r)
        for (std::size_t c = 0; c < side; ++c) src[r * side + c] = grid + (side - 1 - c) * (side + 1) + r;
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c <= side; ++c) src[grid + r * (side + 1) + c] = (side - c) * side + r;
    return src;
}

using RunLength = std::vector<std::pair<PackedPiece, int>>;

RunLength run_length(std::span<const PackedPiece> sorted) {
    RunLength out;
    for (PackedPiece p : sorted) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

PieceBag bag_from_runs(int n, int q, ModelVariant model, const RunLength& runs) {
    std::map<Piece, int> counts;
    for (const auto& [p, k] : runs) counts[Piece::unpack(p)] = k;
    return PieceBag(n, q, model, std::move(counts));
}

void fill_bounds(EntropyReport& r) {
    try {
        r.h_box_leading_bound = h_box_leading_bound(r.n, r.q, r.model);
    } catch (const OutOfRegime&) {
        r.h_box_leading_bound.reset();
    }
}

std::uint64_t pow4(std::uint64_t q) { return q * q * q * q; }

}  // namespace

std::string_view method_name(EntropyMethod method) {
    switch (method) {
        case EntropyMethod::ClosedForm: return "closed_form";
        case EntropyMethod::ExactEnumeration: return "exact";
        case EntropyMethod::MonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

std::optional<double> beta_of(int n, int q) {
    if (n <= 1 || q < 1) return std::nullopt;
    return std::log2(static_cast<double>(q)) / std::log2(static_cast<double>(n));
}

double h_img_closed_form(int n, int q, ModelVariant model) {
    if (n < 1 || q < 1) throw std::invalid_argument("h_img_closed_form needs n, q >= 1");
    if (q == 1) return 0.0;
    const double m = static_cast<double>(n) * static_cast<double>(n + 1);
    const double lq = std::log2(static_cast<double>(q));
    if (model == ModelVariant::FixedOrientation) return 2.0 * m * lq;
    const double qd = static_cast<double>(q);
    return 2.0 * m * lq - 2.0 + std::pow(qd, -m) + std::pow(qd, -1.5 * m);
}

double h_box_leading_bound(int n, int q, ModelVariant model) {
    if (n < 2) throw OutOfRegime("BOX entropy bound needs n >= 2");
    const double nd = n;
    const double ln = std::log2(nd);
    if (static_cast<double>(q) < std::sqrt(nd) * ln)
        throw OutOfRegime("BOX entropy bound needs q >= sqrt(n) log2 n = " +
                          std::to_string(std::sqrt(nd) * ln) + ", got q = " + std::to_string(q));
    const double n2 = nd * nd;
    const double base = 4.0 * n2 * std::log2(static_cast<double>(q)) - 2.0 * n2 * ln;
    if (model == ModelVariant::RotationsAllowed) return base - (2.0 - kLog2e) * n2;
    return base + kLog2e * n2;
}

double entropy_gap_leading(int n, int q) {
    if (q < 2 || q > n)
        throw OutOfRegime("entropy gap needs 2 <= q <= n, got n = " + std::to_string(n) +
                          ", q = " + std::to_string(q));
    const double nd = n;
    const double m = std::min(static_cast<double>(q), nd / q);
    return 2.0 * nd * nd * std::log2(m);
}

EntropyReport closed_form_report(int n, int q, ModelVariant model) {
    EntropyReport r;
    r.n = n;
    r.q = q;
    r.model = model;
    r.method = EntropyMethod::ClosedForm;
    r.beta = beta_of(n, q);
    r.h_img = h_img_closed_form(n, q, model);
    fill_bounds(r);
    if (q >= 2 && q <= n) r.gap = entropy_gap_leading(n, q);
    return r;
}

EntropyReport exact_distributions(int n, int q, ModelVariant model, const ExactOptions& options) {
    const std::uint64_t total = coloring_space_size(n, q, options.budget);
    const bool rot = model == ModelVariant::RotationsAllowed;
    const auto cells = static_cast<std::size_t>(n * n);

    // Rotation-class id of a coloring: the smallest odometer index among its
    // board rotations. Independent of canonical_coloring's serialization.
    std::vector<std::vector<std::size_t>> turns;
    if (rot) {
        const auto one = quarter_turn_sources(n);
        std::vector<std::size_t> cur = one;
        for (int k = 1; k < 4; ++k) {
            turns.push_back(cur);
            std::vector<std::size_t> next(cur.size());
            for (std::size_t i = 0; i < cur.size(); ++i) next[i] = cur[one[i]];
            cur.swap(next);
        }
    }
    const std::size_t edges_per_board = 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
    std::vector<std::uint64_t> place_value(edges_per_board);
    for (std::size_t i = 0; i < edges_per_board; ++i)
        place_value[i] = i == 0 ? 1 : place_value[i - 1] * static_cast<std::uint64_t>(q);

    std::vector<std::uint8_t> class_size(total, 0);
    std::unordered_map<std::vector<PackedPiece>, std::uint64_t, KeyHash> bags;
    std::vector<PackedPiece> key(cells);

    for_each_coloring(n, q, options.budget, [&](const ColoringBatch& batch) {
        for (std::size_t b = 0; b < batch.boards; ++b) {
            std::uint64_t id = batch.first_index + b;
            const auto e = batch.board_edges(b);
            for (const auto& src : turns) {
                std::uint64_t rotated = 0;
                for (std::size_t i = 0; i < edges_per_board; ++i) rotated += e[src[i]] * place_value[i];
                id = std::min(id, rotated);
            }
            ++class_size[id];
            const auto pieces = rot ? batch.board_canon(b) : batch.board_pieces(b);
            std::copy(pieces.begin(), pieces.end(), key.begin());
            std::sort(key.begin(), key.end());
            auto it = bags.find(key);
            if (it == bags.end())
                bags.emplace(key, 1);
            else
                ++it->second;
        }
    });

    EntropyReport r;
    r.n = n;
    r.q = q;
    r.model = model;
    r.method = EntropyMethod::ExactEnumeration;
    r.beta = beta_of(n, q);
    r.colorings = total;

    std::vector<std::uint64_t> image_weights;
    for (std::uint8_t s : class_size)
        if (s) image_weights.push_back(s);
    r.distinct_images = image_weights.size();
    r.h_img = entropy_from_counts(std::move(image_weights), total);

    // Deterministic order for every reduction below.
    std::vector<std::pair<std::vector<PackedPiece>, std::uint64_t>> sorted_bags(bags.begin(), bags.end());
    std::sort(sorted_bags.begin(), sorted_bags.end());
    r.distinct_bags = sorted_bags.size();

    std::vector<std::uint64_t> bag_weights;
    std::map<PackedPiece, std::map<int, std::uint64_t>> marginals;
    std::uint64_t unique_mass = 0;
    for (const auto& [bag_key, weight] : sorted_bags) {
        bag_weights.push_back(weight);
        const RunLength runs = run_length(bag_key);
        for (const auto& [type, k] : runs) marginals[type][k] += weight;
        if (options.with_uniqueness) {
            const PieceBag bag = bag_from_runs(n, q, model, runs);
            if (decide_unique_edge(bag).unique.value()) unique_mass += weight;
        }
    }
    r.h_box = entropy_from_counts(std::move(bag_weights), total);

    long double subadditive = 0;
    for (const auto& [type, dist] : marginals) {
        std::vector<std::uint64_t> weights;
        std::uint64_t present = 0;
        for (const auto& [k, w] : dist) {
            weights.push_back(w);
            present += w;
        }
        weights.push_back(total - present);
        subadditive += entropy_from_counts(std::move(weights), total);
    }
    r.h_box_subadditive = static_cast<double>(subadditive);
    if (options.with_uniqueness)
        r.p_unique_edge = static_cast<double>(unique_mass) / static_cast<double>(total);
    r.gap = r.h_img - *r.h_box;
    fill_bounds(r);
    return r;
}

EntropyReport mc_entropy_estimates(const ExperimentParams& params) {
    if (params.trials < 100) throw std::invalid_argument("Monte Carlo estimates need trials >= 100");
    const int n = params.n;
    const int q = params.q;
    const bool rot = params.model == ModelVariant::RotationsAllowed;
    const std::uint64_t trials = params.trials;

    std::vector<RunLength> samples(trials);
    parallel_for(trials, params.jobs, [&](std::size_t t) {
        const EdgeColoring c = generate_puzzle(n, q, derive_seed(params.seed, n, q, t));
        const PieceBag bag = extract_bag(c, params.model);
        RunLength runs;
        for (const auto& [type, k] : bag.counts()) runs.emplace_back(type.pack(), k);
        samples[t] = std::move(runs);
    });

    std::map<PackedPiece, std::map<int, std::uint64_t>> hist;
    std::uint64_t duplicates = 0;
    for (const RunLength& runs : samples) {
        bool dup = false;
        for (const auto& [type, k] : runs) {
            ++hist[type][k];
            dup = dup || k > 1;
        }
        duplicates += dup ? 1 : 0;
    }

    // Plug-in estimate of sum_J H(X_J) and its delta-method standard error.
    // The influence of trial i is psi_i = sum_J -log2 p_J(x_iJ).
    const double T = static_cast<double>(trials);
    std::map<PackedPiece, std::map<int, double>> neg_log;
    std::map<PackedPiece, double> neg_log_zero;  // only types with p_J(0) > 0
    double zero_total = 0;
    double plug_in = 0;
    for (const auto& [type, dist] : hist) {
        std::uint64_t present = 0;
        for (const auto& [k, c] : dist) {
            const double p = static_cast<double>(c) / T;
            neg_log[type][k] = -std::log2(p);
            plug_in += -p * std::log2(p);
            present += c;
        }
        const std::uint64_t absent = trials - present;
        if (absent > 0) {
            const double p0 = static_cast<double>(absent) / T;
            neg_log_zero[type] = -std::log2(p0);
            zero_total += -std::log2(p0);
            plug_in += -p0 * std::log2(p0);
        }
    }
    double psi_sum = 0;
    double psi_sq = 0;
    for (const RunLength& runs : samples) {
        double psi = zero_total;
        for (const auto& [type, k] : runs) {
            psi += neg_log[type][k];
            if (auto z = neg_log_zero.find(type); z != neg_log_zero.end()) psi -= z->second;
        }
        psi_sum += psi;
        psi_sq += psi * psi;
    }
    const double psi_mean = psi_sum / T;
    const double psi_var = std::max(0.0, (psi_sq - T * psi_mean * psi_mean) / (T - 1));

    EntropyReport r;
    r.n = n;
    r.q = q;
    r.model = params.model;
    r.method = EntropyMethod::MonteCarlo;
    r.beta = params.beta();
    r.trials = trials;
    r.h_img = h_img_closed_form(n, q, params.model);
    r.h_box_subadditive = plug_in;
    r.h_box_subadditive_std_error = std::sqrt(psi_var / T);
    const double pd = static_cast<double>(duplicates) / T;
    r.duplicate_probability = pd;
    r.duplicate_probability_std_error = std::sqrt(pd * (1 - pd) / T);
    r.gap = r.h_img - plug_in;
    fill_bounds(r);

    // Every type when the type space is small, otherwise the observed ones.
    std::vector<Piece> types;
    const auto q64 = static_cast<std::uint64_t>(q);
    if (pow4(q64) <= 65536) {
        for (std::uint64_t x = 0; x < pow4(q64); ++x) {
            const Piece p{{static_cast<Color>(x / (q64 * q64 * q64)), static_cast<Color>((x / (q64 * q64)) % q64),
                           static_cast<Color>((x / q64) % q64), static_cast<Color>(x % q64)}};
            if (!rot || canonicalize_piece(p).edges == p) types.push_back(p);
        }
    } else {
        for (const auto& [type, dist] : hist) types.push_back(Piece::unpack(type));
    }
    for (const Piece& p : types) {
        double sum = 0;
        double sq = 0;
        if (auto it = hist.find(p.pack()); it != hist.end()) {
            for (const auto& [k, c] : it->second) {
                sum += static_cast<double>(k) * static_cast<double>(c);
                sq += static_cast<double>(k) * static_cast<double>(k) * static_cast<double>(c);
            }
        }
        TypeMultiplicity m;
        m.type = p;
        m.orbit = rot ? canonicalize_piece(p).orbit : 1;
        m.mean = sum / T;
        const double var = std::max(0.0, (sq - T * m.mean * m.mean) / (T - 1));
        m.std_error = std::sqrt(var / T);
        m.expected = expected_multiplicity(m.orbit, n, q);
        r.multiplicities.push_back(m);
    }
    return r;
}

double round_significant(double x, int digits) {
    if (!std::isfinite(x) || x == 0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const EntropyReport& r) {
    using nlohmann::json;
    auto num = [](const std::optional<double>& x) -> json {
        if (!x || !std::isfinite(*x)) return nullptr;
        return round_significant(*x);
    };
    json j;
    j["schema_version"] = 1;
    j["n"] = r.n;
    j["q"] = r.q;
    j["model"] = std::string(model_name(r.model));
    j["method"] = std::string(method_name(r.method));
    j["beta"] = num(r.beta);
    j["h_img"] = num(r.h_img);
    j["h_box"] = num(r.h_box);
    j["h_box_subadditive"] = num(r.h_box_subadditive);
    j["h_box_subadditive_stderr"] = num(r.h_box_subadditive_std_error);
    j["h_box_leading_bound"] = num(r.h_box_leading_bound);
    j["gap"] = num(r.gap);
    j["p_unique_edge"] = num(r.p_unique_edge);
    j["trials"] = r.trials;
    j["duplicate_probability"] = num(r.duplicate_probability);
    j["duplicate_probability_stderr"] = num(r.duplicate_probability_std_error);
    j["colorings"] = r.colorings;
    j["distinct_bags"] = r.distinct_bags;
    j["distinct_images"] = r.distinct_images;
    json mult = json::array();
    for (const auto& m : r.multiplicities) {
        mult.push_back({{"type", {m.type.north(), m.type.east(), m.type.south(), m.type.west()}},
                        {"orbit", m.orbit},
                        {"mean", round_significant(m.mean)},
                        {"stderr", round_significant(m.std_error)},
                        {"expected", round_significant(m.expected)}});
    }
    j["multiplicities"] = std::move(mult);
    return j;
}

}  // namespace jigsaw
