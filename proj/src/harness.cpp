#include "jigsaw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "jigsaw/parallel.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
        const auto x = std::stoull(value, &used, 0);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected a non-negative integer, got '" +
                                    value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const auto& item : split_list(value)) {
        const auto x = parse_u64(key, item);
        if (x > 1'000'000) throw std::invalid_argument("config key '" + key + "': value too large");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

}  // namespace

std::vector<std::pair<int, int>> SweepConfig::cells() const {
    std::vector<std::pair<int, int>> out;
    for (int n : n_values) {
        for (int q : q_values) out.emplace_back(n, q);
        for (double ratio : q_ratios)
            out.emplace_back(n, std::max(1, static_cast<int>(std::lround(ratio * n))));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void SweepConfig::validate() const {
    if (n_values.empty()) throw std::invalid_argument("sweep config: 'n_values' must be non-empty");
    if (q_values.empty() && q_ratios.empty())
        throw std::invalid_argument("sweep config: 'q_values' or 'q_ratios' must be non-empty");
    for (int n : n_values)
        if (n < 1 || n >= (1 << 12)) throw std::invalid_argument("sweep config: 'n_values' entries must be in [1, 4096)");
    for (int q : q_values)
        if (q < 1 || q > kMaxColors) throw std::invalid_argument("sweep config: 'q_values' entries must be in [1, 256]");
    for (double r : q_ratios)
        if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("sweep config: 'q_ratios' entries must be positive");
    for (const auto& [n, q] : cells())
        if (q > kMaxColors) throw std::invalid_argument("sweep config: 'q_ratios' gives q > 256 at n = " + std::to_string(n));
    if (trials < 1) throw std::invalid_argument("sweep config: 'trials' must be >= 1");
    if (trials >= (1ULL << 32)) throw std::invalid_argument("sweep config: 'trials' must be < 2^32");
    if (class_limit < 2) throw std::invalid_argument("sweep config: 'class_limit' must be >= 2");
    if (jobs < 1) throw std::invalid_argument("sweep config: 'jobs' must be >= 1");
}

SweepConfig parse_sweep_config(std::istream& in, SweepConfig config) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n_values") config.n_values = parse_int_list(key, value);
        else if (key == "q_values") config.q_values = parse_int_list(key, value);
        else if (key == "q_ratios") {
            config.q_ratios.clear();
            for (const auto& item : split_list(value)) config.q_ratios.push_back(parse_double(key, item));
        } else if (key == "model") {
            try {
                config.model = parse_model(value);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("config key 'model': expected rot or fixed, got '" + value + "'");
            }
        } else if (key == "trials") config.trials = parse_u64(key, value);
        else if (key == "master_seed" || key == "seed") config.master_seed = parse_u64(key, value);
        else if (key == "class_limit") config.class_limit = parse_u64(key, value);
        else if (key == "node_budget") config.node_budget = parse_u64(key, value);
        else if (key == "time_budget_ms") config.time_budget = std::chrono::milliseconds(parse_u64(key, value));
        else if (key == "count") config.count = parse_bool(key, value);
        else if (key == "timing") config.timing = parse_bool(key, value);
        else if (key == "output") config.output = value;
        else if (key == "jobs") config.jobs = static_cast<unsigned>(parse_u64(key, value));
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return config;
}

SweepConfig load_sweep_config(const std::filesystem::path& path, SweepConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    return parse_sweep_config(in, std::move(base));
}

TrialRecord run_trial(const SweepConfig& config, int n, int q, std::uint64_t trial) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.n = n;
    rec.q = q;
    rec.model = config.model;
    rec.trial = trial;
    rec.seed = derive_seed(config.master_seed, n, q, trial);

    const EdgeColoring puzzle = generate_puzzle(n, q, rec.seed);
    const PieceBag bag = extract_bag(puzzle, config.model);
    rec.duplicates = std::any_of(bag.counts().begin(), bag.counts().end(),
                                 [](const auto& kv) { return kv.second > 1; });

    SolverLimits limits;
    limits.class_limit = config.class_limit;
    limits.node_budget = config.node_budget;
    limits.time_budget = config.time_budget;
    const EdgeDecision decision = decide_unique_edge(bag, limits);
    rec.distinct_classes = decision.classes_found;
    if (decision.unique) {
        const AssemblyVerdict verdict = vertex_verdict(bag, *decision.unique);
        rec.unique_edge = verdict.unique_edge;
        rec.unique_vertex = verdict.unique_vertex;
    } else {
        rec.outcome = "budget";
    }
    if (config.count && rec.ok()) {
        const RawCount raw = count_raw_assemblies(bag, config.node_budget);
        if (raw.exact)
            rec.raw_count = raw.count.str();
        else
            rec.outcome = "budget";
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    rec.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    return rec;
}

std::vector<TrialRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    struct Task {
        int n, q;
        std::uint64_t trial;
    };
    std::vector<Task> tasks;
    for (const auto& [n, q] : config.cells())
        for (std::uint64_t t = 0; t < config.trials; ++t) tasks.push_back({n, q, t});
    std::vector<TrialRecord> records(tasks.size());
    parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
        records[i] = run_trial(config, tasks[i].n, tasks[i].q, tasks[i].trial);
    });
    std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        return std::tie(a.n, a.q, a.trial) < std::tie(b.n, b.q, b.trial);
    });
    if (!config.timing)
        for (auto& r : records) r.wall_ms = 0;
    return records;
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
    std::map<std::pair<int, int>, CellSummary> cells;
    for (const TrialRecord& r : records) {
        CellSummary& c = cells[{r.n, r.q}];
        c.n = r.n;
        c.q = r.q;
        ++c.trials;
        if (!r.ok()) {
            ++c.budget;
            continue;
        }
        ++c.ok;
        c.unique_edge += r.unique_edge ? 1 : 0;
        c.unique_vertex += r.unique_vertex ? 1 : 0;
        c.duplicates += r.duplicates ? 1 : 0;
    }
    std::vector<CellSummary> out;
    for (auto& [key, c] : cells) out.push_back(c);
    return out;
}

std::string csv_row(const TrialRecord& r) {
    std::ostringstream os;
    auto b = [](bool x) { return x ? "true" : "false"; };
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    os << r.n << ',' << r.q << ',' << model_name(r.model) << ',' << r.trial << ',' << r.seed << ','
       << b(r.unique_edge) << ',' << b(r.unique_vertex) << ',' << r.distinct_classes << ','
       << r.raw_count.value_or("") << ',' << b(r.duplicates) << ',' << (r.wall_ms == 0 ? "0" : wall) << ','
       << r.outcome;
    return os.str();
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kCsvHeader << '\n';
    for (const TrialRecord& r : records) out << csv_row(r) << '\n';
}

nlohmann::json summary_json(const SweepConfig& config, const std::vector<CellSummary>& cells) {
    using nlohmann::json;
    json out;
    out["schema_version"] = kSweepSchemaVersion;
    out["model"] = std::string(model_name(config.model));
    out["master_seed"] = config.master_seed;
    out["trials_per_cell"] = config.trials;
    json rows = json::array();
    for (const CellSummary& c : cells) {
        rows.push_back({{"n", c.n},
                        {"q", c.q},
                        {"trials", c.trials},
                        {"ok", c.ok},
                        {"budget", c.budget},
                        {"unique_edge", c.unique_edge},
                        {"unique_vertex", c.unique_vertex},
                        {"duplicates", c.duplicates},
                        {"p_unique_edge", c.p_unique_edge()},
                        {"p_unique_vertex", c.p_unique_vertex()},
                        {"p_duplicates", c.p_duplicates()}});
    }
    out["cells"] = std::move(rows);
    return out;
}

std::filesystem::path summary_path_for(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".summary.json");
    return p;
}

void persist_sweep(const SweepConfig& config, const std::vector<TrialRecord>& records) {
    if (config.output.empty()) throw std::invalid_argument("sweep config: 'output' path is required");
    {
        std::ofstream csv(config.output, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot open " + config.output + " for writing");
        write_csv(csv, records);
    }
    std::ofstream summary(summary_path_for(config.output), std::ios::binary);
    if (!summary) throw std::runtime_error("cannot write sweep summary next to " + config.output);
    summary << summary_json(config, summarize(records)).dump(2) << '\n';
}

unsigned jobs_from_env(unsigned fallback) {
    if (const char* env = std::getenv("JIG_JOBS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return fallback;
}

}  // namespace jigsaw
