// jiglab: command-line front end for puzzle generation, exact solving,
// entropy evaluation, greedy estimation, sweeps and the piece-type census.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "jigsaw/entropy.hpp"
#include "jigsaw/greedy.hpp"
#include "jigsaw/harness.hpp"
#include "jigsaw/kernels.hpp"
#include "jigsaw/puzzle_io.hpp"
#include "jigsaw/solver.hpp"

namespace {

using nlohmann::json;
using namespace jigsaw;

struct Common {
    std::uint64_t seed = 0;
    std::string model = "rot";
    std::string output;
    bool json_out = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--model", model, "Piece model: rot or fixed")->check(CLI::IsMember({"rot", "fixed"}));
        cmd->add_option("-o,--output", output, "Write the result to this file instead of stdout");
        cmd->add_flag("--json", json_out, "Print machine-readable JSON");
    }
};

void emit(const Common& common, const json& doc, const std::string& text) {
    const std::string body = common.json_out || !common.output.empty() ? doc.dump(2) + "\n" : text;
    if (common.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(common.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + common.output + " for writing");
    out << body;
}

json count_json(const BigCount& x) {
    if (x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
    return x.str();
}

unsigned default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return jobs_from_env(hw == 0 ? 1 : hw);
}

json census_json(const PieceTypeCensus& c) {
    return json{{"r1", c.count_r1}, {"r2", c.count_r2}, {"r4", c.count_r4}, {"total", c.total}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random jigsaw puzzle laboratory"};
    app.require_subcommand(1);

    // gen
    Common gen_common;
    int gen_n = 0;
    int gen_q = 0;
    auto* gen = app.add_subcommand("gen", "Generate a random puzzle and write it as JSON");
    gen_common.attach(gen);
    gen->add_option("-n,--n", gen_n, "Board side")->required()->check(CLI::PositiveNumber);
    gen->add_option("-q,--q", gen_q, "Number of edge colors")->required()->check(CLI::Range(1, 256));

    // solve
    Common solve_common;
    std::string solve_file;
    std::size_t solve_limit = kDefaultClassLimit;
    std::uint64_t solve_nodes = 100'000'000;
    bool solve_model_set = false;
    bool solve_vertex_oracle = false;
    bool solve_list = false;
    auto* solve = app.add_subcommand("solve", "Enumerate the assemblies of a puzzle file");
    solve_common.attach(solve);
    solve->add_option("puzzle", solve_file, "Puzzle JSON file")->required()->check(CLI::ExistingFile);
    solve->add_option("--limit", solve_limit, "Maximum distinct classes to record")->check(CLI::PositiveNumber);
    solve->add_option("--node-budget", solve_nodes, "Search node budget (0 = unlimited)");
    solve->add_flag("--vertex-oracle", solve_vertex_oracle, "Also brute-force the vertex-assembly verdict");
    solve->add_flag("--list", solve_list, "Include the distinct colorings in the JSON output");

    // entropy
    Common ent_common;
    int ent_n = 0;
    int ent_q = 0;
    std::string ent_method = "closed-form";
    std::uint64_t ent_trials = 10'000;
    std::uint64_t ent_budget = 1ULL << 25;
    bool ent_no_unique = false;
    unsigned ent_jobs = 0;
    auto* ent = app.add_subcommand("entropy", "Entropy of IMG and BOX");
    ent_common.attach(ent);
    ent->add_option("-n,--n", ent_n, "Board side")->required()->check(CLI::PositiveNumber);
    ent->add_option("-q,--q", ent_q, "Number of edge colors")->required()->check(CLI::Range(1, 256));
    ent->add_option("--method", ent_method, "closed-form (alias formula), exact or mc")
        ->check(CLI::IsMember({"closed-form", "formula", "exact", "mc"}));
    ent->add_option("--trials", ent_trials, "Monte Carlo trials")->check(CLI::Range(100ULL, 1ULL << 32));
    ent->add_option("--budget", ent_budget, "Exhaustive enumeration budget (colorings)");
    ent->add_flag("--no-uniqueness", ent_no_unique, "Skip P(unique edge assembly) in exact mode");
    ent->add_option("--jobs", ent_jobs, "Worker threads (default: JIG_JOBS or all cores)");

    // greedy
    Common gr_common;
    std::string gr_file;
    int gr_n = 0;
    int gr_q = 0;
    std::uint64_t gr_runs = 10'000;
    bool gr_exact = false;
    unsigned gr_jobs = 0;
    auto* gr = app.add_subcommand("greedy", "Greedy tree-size estimate of the raw assembly count");
    gr_common.attach(gr);
    gr->add_option("puzzle", gr_file, "Puzzle JSON file (otherwise generated from -n/-q/--seed)")
        ->check(CLI::ExistingFile);
    gr->add_option("-n,--n", gr_n, "Board side")->check(CLI::PositiveNumber);
    gr->add_option("-q,--q", gr_q, "Number of edge colors")->check(CLI::Range(1, 256));
    gr->add_option("--runs", gr_runs, "Greedy probes")->check(CLI::PositiveNumber);
    gr->add_flag("--exact", gr_exact, "Also compute the exact raw count");
    gr->add_option("--jobs", gr_jobs, "Worker threads (default: JIG_JOBS or all cores)");

    // sweep
    Common sw_common;
    std::string sw_config_file;
    std::vector<int> sw_n;
    std::vector<int> sw_q;
    std::vector<double> sw_ratios;
    std::optional<std::uint64_t> sw_trials;
    std::optional<std::size_t> sw_class_limit;
    std::optional<std::uint64_t> sw_nodes;
    std::optional<std::uint64_t> sw_time_ms;
    bool sw_count = false;
    bool sw_timing = false;
    unsigned sw_jobs = 0;
    auto* sw = app.add_subcommand("sweep", "Uniqueness sweep over (n, q) cells");
    sw_common.attach(sw);
    sw->add_option("--config", sw_config_file, "Key-value config file")->check(CLI::ExistingFile);
    sw->add_option("--n-values", sw_n, "Board sides")->delimiter(',');
    sw->add_option("--q-values", sw_q, "Color counts")->delimiter(',');
    sw->add_option("--q-ratios", sw_ratios, "q/n ratios")->delimiter(',');
    sw->add_option("--trials", sw_trials, "Trials per cell");
    sw->add_option("--class-limit", sw_class_limit, "Distinct class cap");
    sw->add_option("--node-budget", sw_nodes, "Search node budget per trial (0 = unlimited)");
    sw->add_option("--time-budget-ms", sw_time_ms, "Wall-clock budget per trial (0 = unlimited)");
    sw->add_flag("--count", sw_count, "Record exact raw counts");
    sw->add_flag("--timing", sw_timing, "Record measured wall_ms");
    sw->add_option("--jobs", sw_jobs, "Worker threads (default: JIG_JOBS or all cores)");

    // census
    Common ce_common;
    std::uint64_t ce_q = 0;
    auto* ce = app.add_subcommand("census", "Number of piece types by rotation orbit size");
    ce_common.attach(ce);
    ce->add_option("-q,--q", ce_q, "Number of edge colors")->required()->check(CLI::Range(1ULL, 65535ULL));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const Puzzle puzzle{generate_puzzle(gen_n, gen_q, gen_common.seed), parse_model(gen_common.model)};
            if (gen_common.output.empty())
                std::cout << write_puzzle_string(puzzle);
            else
                write_puzzle_file(gen_common.output, puzzle);
        } else if (*solve) {
            solve_model_set = solve->count("--model") > 0;
            Puzzle puzzle = read_puzzle_file(solve_file);
            if (solve_model_set) puzzle.model = parse_model(solve_common.model);
            const PieceBag bag = extract_bag(puzzle.coloring, puzzle.model);
            SolverLimits limits;
            limits.class_limit = std::max<std::size_t>(2, solve_limit);
            limits.node_budget = solve_nodes;
            const SolutionSet set = enumerate_assemblies(bag, limits);
            const std::size_t classes = set.distinct_classes.size();
            std::optional<bool> unique_edge;
            if (set.complete()) unique_edge = classes == 1;
            else if (classes >= 2) unique_edge = false;
            json doc{{"n", bag.n()},
                     {"q", bag.q()},
                     {"model", std::string(model_name(bag.model()))},
                     {"distinct_classes", classes},
                     {"truncated", set.truncated},
                     {"complete", set.complete()},
                     {"stop", std::string(stop_reason_name(set.stop))},
                     {"nodes", set.nodes},
                     {"raw_count", count_json(set.raw_count)}};
            std::ostringstream text;
            if (unique_edge) {
                const AssemblyVerdict verdict = vertex_verdict(bag, *unique_edge);
                doc["unique_edge"] = verdict.unique_edge;
                doc["unique_vertex"] = verdict.unique_vertex;
                doc["reason"] = std::string(verdict_reason_name(verdict.reason));
                text << "unique edge assembly:   " << (verdict.unique_edge ? "yes" : "no") << "\n"
                     << "unique vertex assembly: " << (verdict.unique_vertex ? "yes" : "no") << " ("
                     << verdict_reason_name(verdict.reason) << ")\n";
            } else {
                doc["unique_edge"] = nullptr;
                doc["unique_vertex"] = nullptr;
                doc["reason"] = nullptr;
                text << "search stopped by " << stop_reason_name(set.stop) << " before a verdict\n";
            }
            text << "distinct classes:       " << classes << (set.truncated ? " (truncated)" : "") << "\n"
                 << "raw assemblies:         " << set.raw_count.str() << (set.complete() ? "" : " (partial)") << "\n";
            if (solve_vertex_oracle) {
                const auto oracle = vertex_uniqueness_oracle(puzzle.coloring, puzzle.model);
                doc["unique_vertex_oracle"] = oracle ? json(*oracle) : json(nullptr);
                text << "vertex oracle:          " << (oracle ? (*oracle ? "unique" : "not unique") : "budget") << "\n";
            }
            if (solve_list) {
                json list = json::array();
                for (const auto& c : set.distinct_classes) list.push_back(puzzle_to_json(Puzzle{c, bag.model()}));
                doc["classes"] = std::move(list);
            }
            emit(solve_common, doc, text.str());
        } else if (*ent) {
            const ModelVariant model = parse_model(ent_common.model);
            EntropyReport report;
            if (ent_method == "exact") {
                ExactOptions options;
                options.budget = ent_budget;
                options.with_uniqueness = !ent_no_unique;
                report = exact_distributions(ent_n, ent_q, model, options);
            } else if (ent_method == "mc") {
                ExperimentParams params;
                params.n = ent_n;
                params.q = ent_q;
                params.model = model;
                params.trials = ent_trials;
                params.seed = ent_common.seed;
                params.jobs = ent_jobs ? ent_jobs : default_jobs();
                report = mc_entropy_estimates(params);
            } else {
                report = closed_form_report(ent_n, ent_q, model);
            }
            const json doc = to_json(report);
            std::ostringstream text;
            text.precision(12);
            text << "method: " << method_name(report.method) << "  n=" << report.n << " q=" << report.q
                 << " model=" << model_name(report.model) << "\n";
            for (const char* key : {"h_img", "h_box", "h_box_subadditive", "h_box_subadditive_stderr",
                                    "h_box_leading_bound", "gap", "p_unique_edge", "duplicate_probability"}) {
                if (!doc[key].is_null()) text << "  " << key << " = " << doc[key].get<double>() << "\n";
            }
            emit(ent_common, doc, text.str());
        } else if (*gr) {
            Puzzle puzzle{EdgeColoring(1, 1), parse_model(gr_common.model)};
            if (!gr_file.empty()) {
                puzzle = read_puzzle_file(gr_file);
                if (gr->count("--model")) puzzle.model = parse_model(gr_common.model);
            } else {
                if (gr_n < 1 || gr_q < 1) throw std::invalid_argument("greedy: give a puzzle file or both -n and -q");
                puzzle.coloring = generate_puzzle(gr_n, gr_q, gr_common.seed);
            }
            const PieceBag bag = extract_bag(puzzle.coloring, puzzle.model);
            const EstimatorSummary s =
                estimate_raw_count(bag, gr_runs, gr_common.seed, gr_jobs ? gr_jobs : default_jobs());
            json doc{{"n", bag.n()},
                     {"q", bag.q()},
                     {"model", std::string(model_name(bag.model()))},
                     {"runs", s.runs},
                     {"mean", round_significant(s.mean)},
                     {"stderr", round_significant(s.std_error)},
                     {"success_rate", s.success_rate},
                     {"mean_log2", s.mean > 0 ? json(round_significant(std::log2(s.mean))) : json(nullptr)}};
            std::ostringstream text;
            text.precision(12);
            text << "greedy estimate of raw assemblies: " << s.mean << " +- " << s.std_error << " ("
                 << s.runs << " runs, success rate " << s.success_rate << ")\n";
            if (bag.q() >= 2 && bag.q() <= bag.n()) {
                doc["solution_scale_log2"] = round_significant(solution_scale_log2(bag.n(), bag.q()));
                text << "solution scale (log2): " << solution_scale_log2(bag.n(), bag.q()) << "\n";
            }
            if (gr_exact) {
                const RawCount exact = count_raw_assemblies(bag);
                doc["exact_raw_count"] = count_json(exact.count);
                text << "exact raw count: " << exact.count.str() << "\n";
            }
            emit(gr_common, doc, text.str());
        } else if (*sw) {
            SweepConfig config;
            config.jobs = default_jobs();
            if (!sw_config_file.empty()) config = load_sweep_config(sw_config_file, config);
            if (!sw_n.empty()) config.n_values = sw_n;
            if (!sw_q.empty()) config.q_values = sw_q;
            if (!sw_ratios.empty()) config.q_ratios = sw_ratios;
            if (sw_trials) config.trials = *sw_trials;
            if (sw_class_limit) config.class_limit = *sw_class_limit;
            if (sw_nodes) config.node_budget = *sw_nodes;
            if (sw_time_ms) config.time_budget = std::chrono::milliseconds(*sw_time_ms);
            if (sw_count) config.count = true;
            if (sw_timing) config.timing = true;
            if (sw->count("--seed")) config.master_seed = sw_common.seed;
            if (sw->count("--model")) config.model = parse_model(sw_common.model);
            if (!sw_common.output.empty()) config.output = sw_common.output;
            if (sw_jobs) config.jobs = sw_jobs;
            if (config.output.empty()) throw std::invalid_argument("sweep: 'output' is required (--output or config)");
            const auto records = run_sweep(config);
            persist_sweep(config, records);
            const json summary = summary_json(config, summarize(records));
            if (sw_common.json_out) {
                std::cout << summary.dump(2) << "\n";
            } else {
                std::cout << "n\tq\ttrials\tP(unique edge)\tP(unique vertex)\tP(duplicates)\tbudget\n";
                for (const auto& cell : summary["cells"])
                    std::cout << cell["n"] << '\t' << cell["q"] << '\t' << cell["trials"] << '\t'
                              << cell["p_unique_edge"] << '\t' << cell["p_unique_vertex"] << '\t'
                              << cell["p_duplicates"] << '\t' << cell["budget"] << "\n";
                std::cout << "wrote " << config.output << " and " << summary_path_for(config.output).string()
                          << "\n";
            }
        } else if (*ce) {
            const PieceTypeCensus c = piece_type_census(ce_q);
            std::ostringstream text;
            text << "r1=" << c.count_r1 << " r2=" << c.count_r2 << " r4=" << c.count_r4 << " total=" << c.total
                 << "\n";
            emit(ce_common, census_json(c), text.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "jiglab: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
