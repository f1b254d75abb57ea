#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jigsaw/harness.hpp"
#include "jigsaw/puzzle_io.hpp"
#include "jigsaw/rng.hpp"

using namespace jigsaw;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs a jiglab command line through the shell, stderr folded into stdout.
Run jiglab(const std::string& args) {
    const std::string cmd = std::string("\"") + JIGLAB_PATH + "\" " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "jigsaw_harness_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SweepConfig small_config() {
    SweepConfig c;
    c.n_values = {1, 2, 3};
    c.q_values = {1, 2, 3};
    c.trials = 12;
    c.master_seed = 42;
    return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("parse_sweep_config: keys, comments, defaults") {
    std::istringstream in(
        "# sweep\n"
        "n_values = 4, 5\n"
        "q_values = 2,3\n"
        "model = fixed   # trailing comment\n"
        "trials = 7\n"
        "master_seed = 99\n"
        "class_limit = 10\n"
        "node_budget = 1000\n"
        "time_budget_ms = 250\n"
        "count = true\n"
        "timing = false\n"
        "output = out.csv\n"
        "jobs = 2\n");
    const SweepConfig c = parse_sweep_config(in);
    CHECK(c.n_values == std::vector<int>{4, 5});
    CHECK(c.q_values == std::vector<int>{2, 3});
    CHECK(c.model == ModelVariant::FixedOrientation);
    CHECK(c.trials == 7);
    CHECK(c.master_seed == 99);
    CHECK(c.class_limit == 10);
    CHECK(c.node_budget == 1000);
    CHECK(c.time_budget == std::chrono::milliseconds(250));
    CHECK(c.count);
    CHECK_FALSE(c.timing);
    CHECK(c.output == "out.csv");
    CHECK(c.jobs == 2);
    CHECK(c.cells() == std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {5, 2}, {5, 3}});
}

TEST_CASE("parse_sweep_config: q ratios") {
    std::istringstream in("n_values = 4, 6\nq_ratios = 0.5, 1\n");
    CHECK(parse_sweep_config(in).cells() == std::vector<std::pair<int, int>>{{4, 2}, {4, 4}, {6, 3}, {6, 6}});
}

TEST_CASE("parse_sweep_config: errors name the key") {
    auto message = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_sweep_config(in).validate();
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("n_values = 2\nq_values = 2\ntrials = x\n").find("'trials'") != std::string::npos);
    CHECK(message("n_values = 2\nq_values = 2\nmodel = flip\n").find("'model'") != std::string::npos);
    CHECK(message("n_values = 2\nq_values = 2\nbogus = 1\n").find("'bogus'") != std::string::npos);
    CHECK(message("q_values = 2\n").find("'n_values'") != std::string::npos);
    CHECK(message("n_values = 2\nq_values = 2\ntrials = 0\n").find("'trials'") != std::string::npos);
    CHECK(message("n_values = 2\nq_values = 2\nno equals sign\n").find("line 3") != std::string::npos);
}

TEST_CASE("run_trial: row consistency and trivial cells") {
    const SweepConfig c = small_config();
    for (const TrialRecord& r : run_sweep(c)) {
        CHECK(r.ok());
        CHECK((!r.unique_vertex || r.unique_edge));
        CHECK(r.distinct_classes >= 1);
        CHECK(r.distinct_classes <= 2);
        if (r.duplicates && r.n >= 2) CHECK_FALSE(r.unique_vertex);
        CHECK(r.seed == derive_seed(c.master_seed, r.n, r.q, r.trial));
        CHECK(r.wall_ms == 0.0);
        CHECK_FALSE(r.raw_count.has_value());
        if (r.n == 1) CHECK(r.unique_edge);
        if (r.n == 2 && r.q == 1) {
            CHECK(r.unique_edge);
            CHECK_FALSE(r.unique_vertex);
            CHECK(r.duplicates);
        }
    }
}

TEST_CASE("run_sweep: sorted rows, summary arithmetic, job independence") {
    SweepConfig c = small_config();
    const auto rows = run_sweep(c);
    CHECK(rows.size() == 9 * 12);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::tie(rows[i - 1].n, rows[i - 1].q, rows[i - 1].trial) < std::tie(rows[i].n, rows[i].q, rows[i].trial));

    for (const CellSummary& cell : summarize(rows)) {
        std::uint64_t ue = 0, uv = 0, dup = 0, ok = 0, all = 0;
        for (const TrialRecord& r : rows) {
            if (r.n != cell.n || r.q != cell.q) continue;
            ++all;
            if (!r.ok()) continue;
            ++ok;
            ue += r.unique_edge;
            uv += r.unique_vertex;
            dup += r.duplicates;
        }
        CHECK(cell.trials == all);
        CHECK(cell.ok == ok);
        CHECK(cell.unique_edge == ue);
        CHECK(cell.unique_vertex == uv);
        CHECK(cell.duplicates == dup);
        if (cell.n == 1) CHECK(cell.p_unique_edge() == 1.0);
    }

    std::ostringstream a;
    write_csv(a, rows);
    c.jobs = 3;
    std::ostringstream b;
    write_csv(b, run_sweep(c));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind(std::string(kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("run_trial: counting and budgets") {
    SweepConfig c = small_config();
    c.count = true;
    const TrialRecord r = run_trial(c, 2, 2, 0);
    REQUIRE(r.raw_count.has_value());
    CHECK(std::stoull(*r.raw_count) >= 1);

    c.count = false;
    c.node_budget = 5;
    const TrialRecord b = run_trial(c, 6, 4, 0);
    CHECK(b.outcome == "budget");
    CHECK(csv_row(b).find(",budget") != std::string::npos);
}

TEST_CASE("csv_row format") {
    TrialRecord r;
    r.n = 2;
    r.q = 3;
    r.trial = 4;
    r.seed = 5;
    r.unique_edge = true;
    r.distinct_classes = 1;
    CHECK(csv_row(r) == "2,3,rot,4,5,true,false,1,,false,0,ok");
}

TEST_CASE("persist_sweep writes csv and summary") {
    SweepConfig c = small_config();
    c.output = scratch("persist.csv").string();
    persist_sweep(c, run_sweep(c));
    CHECK(summary_path_for("a/results.csv") == fs::path("a/results.summary.json"));
    const auto summary = nlohmann::json::parse(slurp(summary_path_for(c.output)));
    CHECK(summary.at("schema_version") == kSweepSchemaVersion);
    CHECK(summary.at("cells").size() == 9);
    CHECK(slurp(c.output).rfind(kCsvHeader, 0) == 0);
}

TEST_CASE("jobs_from_env fallback") {
    CHECK(jobs_from_env(3) >= 1);
}

TEST_CASE("cli: gen then solve") {
    const fs::path p = scratch("p.json");
    REQUIRE(jiglab("gen -n 2 -q 2 --seed 7 -o " + p.string()).status == 0);
    CHECK(read_puzzle_file(p).coloring == generate_puzzle(2, 2, 7));
    const Run r = jiglab("solve " + p.string() + " --json");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("unique_edge").is_boolean());
    CHECK(doc.at("unique_vertex").is_boolean());
    CHECK(doc.at("raw_count").is_number_integer());
}

TEST_CASE("cli: entropy exact matches formula") {
    const Run exact = jiglab("entropy --n 2 --q 2 --method exact --json");
    const Run formula = jiglab("entropy --n 2 --q 2 --method formula --json");
    REQUIRE(exact.status == 0);
    REQUIRE(formula.status == 0);
    const double a = nlohmann::json::parse(exact.out).at("h_img").get<double>();
    const double b = nlohmann::json::parse(formula.out).at("h_img").get<double>();
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("cli: census") {
    const Run r = jiglab("census --q 3 --json");
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out) == nlohmann::json{{"r1", 3}, {"r2", 3}, {"r4", 18}, {"total", 24}});
}

TEST_CASE("cli: malformed inputs exit nonzero and name the field") {
    const fs::path bad = scratch("bad.json");
    {
        std::ofstream out(bad);
        out << R"({"n": 2, "q": 2, "h": [[0, 0], [0, 0]], "v": [[0, 0, 0], [0, 0, 0]]})";
    }
    const Run r = jiglab("solve " + bad.string());
    CHECK(r.status != 0);
    CHECK(r.out.find("'h'") != std::string::npos);

    const fs::path cfg = scratch("bad.cfg");
    {
        std::ofstream out(cfg);
        out << "n_values = 2\nq_values = 2\ntrials = many\n";
    }
    const Run s = jiglab("sweep --config " + cfg.string() + " -o " + scratch("x.csv").string());
    CHECK(s.status != 0);
    CHECK(s.out.find("'trials'") != std::string::npos);

    CHECK(jiglab("gen -n 2").status != 0);
    CHECK(jiglab("entropy --n 2 --q 2 --method nope").status != 0);
}

TEST_CASE("cli: sweep determinism across jobs") {
    const fs::path a = scratch("s1.csv");
    const fs::path b = scratch("s2.csv");
    const std::string args = "sweep --n-values 2,3 --q-values 2,3 --trials 20 --seed 5";
    REQUIRE(jiglab(args + " --jobs 1 -o " + a.string()).status == 0);
    REQUIRE(jiglab(args + " --jobs 4 -o " + b.string()).status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(summary_path_for(a)) != "");
}

}  // TEST_SUITE
