#include "jigsaw/puzzle_io.hpp"

#include <fstream>
#include <sstream>

namespace jigsaw {

namespace {

using nlohmann::json;

int require_int(const json& doc, const char* field) {
    if (!doc.contains(field)) throw PuzzleFormatError(std::string("missing field '") + field + "'");
    const json& x = doc.at(field);
    if (!x.is_number_integer())
        throw PuzzleFormatError(std::string("field '") + field + "' must be an integer");
    const auto value = x.get<long long>();
    if (value < 1 || value > 1'000'000)
        throw PuzzleFormatError(std::string("field '") + field + "' out of range: " + std::to_string(value));
    return static_cast<int>(value);
}

std::vector<Color> read_grid(const json& doc, const char* field, int rows, int cols, int q) {
    if (!doc.contains(field)) throw PuzzleFormatError(std::string("missing field '") + field + "'");
    const json& grid = doc.at(field);
    const std::string name(field);
    if (!grid.is_array() || static_cast<int>(grid.size()) != rows)
        throw PuzzleFormatError("field '" + name + "' must be an array of " + std::to_string(rows) + " rows");
    std::vector<Color> out;
    out.reserve(static_cast<std::size_t>(rows * cols));
    for (int r = 0; r < rows; ++r) {
        const json& row = grid[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw PuzzleFormatError("field '" + name + "' row " + std::to_string(r) + " must have " +
                                    std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            const json& x = row[static_cast<std::size_t>(c)];
            if (!x.is_number_integer())
                throw PuzzleFormatError("field '" + name + "' entry [" + std::to_string(r) + "][" +
                                        std::to_string(c) + "] must be an integer");
            const auto color = x.get<long long>();
            if (color < 0 || color >= q)
                throw PuzzleFormatError("field '" + name + "' entry [" + std::to_string(r) + "][" +
                                        std::to_string(c) + "] = " + std::to_string(color) +
                                        " outside [0," + std::to_string(q) + ")");
            out.push_back(static_cast<Color>(color));
        }
    }
    return out;
}

}  // namespace

json puzzle_to_json(const Puzzle& puzzle) {
    const EdgeColoring& c = puzzle.coloring;
    const int n = c.n();
    json h = json::array();
    for (int r = 0; r <= n; ++r) {
        json row = json::array();
        for (int col = 0; col < n; ++col) row.push_back(c.h(r, col));
        h.push_back(std::move(row));
    }
    json v = json::array();
    for (int r = 0; r < n; ++r) {
        json row = json::array();
        for (int col = 0; col <= n; ++col) row.push_back(c.v(r, col));
        v.push_back(std::move(row));
    }
    return json{{"n", n}, {"q", c.q()}, {"model", std::string(model_name(puzzle.model))}, {"h", h}, {"v", v}};
}

Puzzle puzzle_from_json(const json& doc) {
    if (!doc.is_object()) throw PuzzleFormatError("puzzle document must be a JSON object");
    const int n = require_int(doc, "n");
    const int q = require_int(doc, "q");
    if (q > kMaxColors) throw PuzzleFormatError("field 'q' must be <= 256");
    ModelVariant model = ModelVariant::RotationsAllowed;
    if (doc.contains("model")) {
        const json& m = doc.at("model");
        if (!m.is_string()) throw PuzzleFormatError("field 'model' must be \"rot\" or \"fixed\"");
        try {
            model = parse_model(m.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw PuzzleFormatError("field 'model' must be \"rot\" or \"fixed\"");
        }
    }
    auto h = read_grid(doc, "h", n + 1, n, q);
    auto v = read_grid(doc, "v", n, n + 1, q);
    return Puzzle{EdgeColoring(n, q, std::move(h), std::move(v)), model};
}

std::string write_puzzle_string(const Puzzle& puzzle) { return puzzle_to_json(puzzle).dump() + "\n"; }

Puzzle read_puzzle_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw PuzzleFormatError(std::string("puzzle is not valid JSON: ") + e.what());
    }
    return puzzle_from_json(doc);
}

void write_puzzle_file(const std::filesystem::path& path, const Puzzle& puzzle) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << write_puzzle_string(puzzle);
}

Puzzle read_puzzle_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return read_puzzle_string(buffer.str());
}

}  // namespace jigsaw
