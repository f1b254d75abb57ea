#pragma once

// Puzzle JSON: {"n": int, "q": int, "model": "rot"|"fixed", "h": [[int]], "v": [[int]]}
// with h of shape (n+1) x n and v of shape n x (n+1).

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "jigsaw/model.hpp"

namespace jigsaw {

struct Puzzle {
    EdgeColoring coloring;
    ModelVariant model = ModelVariant::RotationsAllowed;

    bool operator==(const Puzzle&) const = default;
};

// Raised for malformed puzzle documents; the message names the offending field.
struct PuzzleFormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

nlohmann::json puzzle_to_json(const Puzzle& puzzle);
Puzzle puzzle_from_json(const nlohmann::json& doc);

std::string write_puzzle_string(const Puzzle& puzzle);
Puzzle read_puzzle_string(const std::string& text);

void write_puzzle_file(const std::filesystem::path& path, const Puzzle& puzzle);
Puzzle read_puzzle_file(const std::filesystem::path& path);

}  // namespace jigsaw
