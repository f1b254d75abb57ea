#pragma once

// Phase-transition sweeps: per-trial seeding, parallel execution over a
// work queue, CSV rows sorted by (n, q, trial), and a per-cell summary.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jigsaw/model.hpp"
#include "jigsaw/solver.hpp"

namespace jigsaw {

inline constexpr int kSweepSchemaVersion = 1;
inline constexpr const char* kCsvHeader =
    "n,q,model,trial,seed,unique_edge,unique_vertex,distinct_classes,raw_count,duplicates,wall_ms,outcome";

struct SweepConfig {
    std::vector<int> n_values;
    std::vector<int> q_values;
    std::vector<double> q_ratios;  // q = max(1, round(ratio * n)) per n
    ModelVariant model = ModelVariant::RotationsAllowed;
    std::uint64_t trials = 100;
    std::uint64_t master_seed = 0;
    std::size_t class_limit = kDefaultClassLimit;
    std::uint64_t node_budget = 50'000'000;
    std::chrono::milliseconds time_budget{10'000};
    bool count = false;   // exact raw counts per trial
    bool timing = false;  // write measured wall_ms instead of 0
    std::string output;   // CSV path; the summary goes next to it
    unsigned jobs = 1;

    // (n, q) cells in sorted order.
    std::vector<std::pair<int, int>> cells() const;
    void validate() const;  // throws std::invalid_argument naming the field
};

// Key-value text format, one `key = value` per line, `#` starts a comment.
// Keys: n_values, q_values, q_ratios (comma-separated lists), model, trials,
// master_seed, class_limit, node_budget, time_budget_ms, count, timing,
// output, jobs.
SweepConfig parse_sweep_config(std::istream& in, SweepConfig base = {});
SweepConfig load_sweep_config(const std::filesystem::path& path, SweepConfig base = {});

struct TrialRecord {
    int n = 0;
    int q = 0;
    ModelVariant model = ModelVariant::RotationsAllowed;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    bool unique_edge = false;
    bool unique_vertex = false;
    std::size_t distinct_classes = 0;  // capped at 2 in early-exit mode
    std::optional<std::string> raw_count;  // exact count, when counting is enabled
    bool duplicates = false;
    double wall_ms = 0;
    std::string outcome = "ok";  // ok | budget

    bool ok() const { return outcome == "ok"; }
};

TrialRecord run_trial(const SweepConfig& config, int n, int q, std::uint64_t trial);
std::vector<TrialRecord> run_sweep(const SweepConfig& config);

struct CellSummary {
    int n = 0;
    int q = 0;
    std::uint64_t trials = 0;
    std::uint64_t ok = 0;  // rates below are over these trials
    std::uint64_t unique_edge = 0;
    std::uint64_t unique_vertex = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t budget = 0;

    double p_unique_edge() const { return ok ? static_cast<double>(unique_edge) / static_cast<double>(ok) : 0.0; }
    double p_unique_vertex() const { return ok ? static_cast<double>(unique_vertex) / static_cast<double>(ok) : 0.0; }
    double p_duplicates() const { return ok ? static_cast<double>(duplicates) / static_cast<double>(ok) : 0.0; }
};

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

std::string csv_row(const TrialRecord& record);
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
nlohmann::json summary_json(const SweepConfig& config, const std::vector<CellSummary>& cells);

// "results.csv" -> "results.summary.json".
std::filesystem::path summary_path_for(const std::filesystem::path& csv_path);

// Writes config.output (CSV) and its summary JSON.
void persist_sweep(const SweepConfig& config, const std::vector<TrialRecord>& records);

// JIG_JOBS when set and valid, else `fallback`.
unsigned jobs_from_env(unsigned fallback);

}  // namespace jigsaw
