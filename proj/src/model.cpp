#include "jigsaw/model.hpp"

#include <algorithm>
#include <numeric>

#include "jigsaw/kernels.hpp"
#include "jigsaw/rng.hpp"

namespace jigsaw {

namespace {

void check_dims(int n, int q) {
    if (n < 1) throw std::invalid_argument("board side n must be >= 1, got " + std::to_string(n));
    if (q < 1) throw std::invalid_argument("color count q must be >= 1, got " + std::to_string(q));
    if (q > kMaxColors)
        throw std::invalid_argument("color count q must be <= 256, got " + std::to_string(q));
}

void check_colors(std::span<const Color> grid, int q, const char* name) {
    for (Color c : grid) {
        if (c >= q)
            throw std::invalid_argument(std::string("edge color in ") + name + " out of range [0," +
                                        std::to_string(q) + "): " + std::to_string(c));
    }
}

}  // namespace

std::string_view model_name(ModelVariant model) {
    return model == ModelVariant::RotationsAllowed ? "rot" : "fixed";
}

ModelVariant parse_model(std::string_view name) {
    if (name == "rot") return ModelVariant::RotationsAllowed;
    if (name == "fixed") return ModelVariant::FixedOrientation;
    throw std::invalid_argument("model must be \"rot\" or \"fixed\", got \"" + std::string(name) +
                                "\"");
}

EdgeColoring::EdgeColoring(int n, int q) : n_(n), q_(q) {
    check_dims(n, q);
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
    h_.assign(count, 0);
    v_.assign(count, 0);
}

EdgeColoring::EdgeColoring(int n, int q, std::vector<Color> h, std::vector<Color> v)
    : n_(n), q_(q), h_(std::move(h)), v_(std::move(v)) {
    check_dims(n, q);
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
    if (h_.size() != count || v_.size() != count)
        throw std::invalid_argument("edge grids must each hold n(n+1) entries");
    check_colors(h_, q, "h");
    check_colors(v_, q, "v");
}

void EdgeColoring::set_h(int row, int col, Color color) {
    if (color >= q_) throw std::invalid_argument("edge color out of range");
    h_.at(static_cast<std::size_t>(row * n_ + col)) = color;
}

void EdgeColoring::set_v(int row, int col, Color color) {
    if (color >= q_) throw std::invalid_argument("edge color out of range");
    v_.at(static_cast<std::size_t>(row * (n_ + 1) + col)) = color;
}

EdgeColoring generate_puzzle(int n, int q, std::uint64_t seed) {
    EdgeColoring c(n, q);
    Engine engine(seed);
    std::vector<Color> h(c.h_grid().size());
    std::vector<Color> v(c.v_grid().size());
    for (auto& e : h) e = static_cast<Color>(uniform_below(engine, static_cast<std::uint64_t>(q)));
    for (auto& e : v) e = static_cast<Color>(uniform_below(engine, static_cast<std::uint64_t>(q)));
    return EdgeColoring(n, q, std::move(h), std::move(v));
}

Piece piece_at(const EdgeColoring& c, int row, int col) {
    if (row < 0 || col < 0 || row >= c.n() || col >= c.n())
        throw std::out_of_range("cell (" + std::to_string(row) + "," + std::to_string(col) +
                                ") outside " + std::to_string(c.n()) + "x" +
                                std::to_string(c.n()) + " board");
    return Piece{{c.h(row, col), c.v(row, col + 1), c.h(row + 1, col), c.v(row, col)}};
}

std::vector<PackedPiece> serialize(const EdgeColoring& c) {
    const int n = c.n();
    std::vector<PackedPiece> out(static_cast<std::size_t>(n * n));
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col)
            out[static_cast<std::size_t>(r * n + col)] = piece_at(c, r, col).pack();
    return out;
}

EdgeColoring coloring_from_pieces(int n, int q, std::span<const PackedPiece> pieces) {
    if (pieces.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("piece array must hold n^2 entries");
    EdgeColoring c(n, q);
    auto at = [&](int r, int col) { return Piece::unpack(pieces[static_cast<std::size_t>(r * n + col)]); };
    for (int r = 0; r < n; ++r) {
        for (int col = 0; col < n; ++col) {
            const Piece p = at(r, col);
            if (r > 0 && at(r - 1, col).south() != p.north())
                throw std::invalid_argument("pieces disagree on a horizontal edge");
            if (col > 0 && at(r, col - 1).east() != p.west())
                throw std::invalid_argument("pieces disagree on a vertical edge");
            c.set_h(r, col, p.north());
            c.set_v(r, col, p.west());
            if (r == n - 1) c.set_h(n, col, p.south());
            if (col == n - 1) c.set_v(r, n, p.east());
        }
    }
    return c;
}

void rotate_serialized(std::span<const PackedPiece> in, int n, std::span<PackedPiece> out) {
    // Cell (r, c) moves to (c, n-1-r) and its piece turns with the board.
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col)
            out[static_cast<std::size_t>(col * n + (n - 1 - r))] =
                rotate_packed(in[static_cast<std::size_t>(r * n + col)]);
}

EdgeColoring rotate_coloring(const EdgeColoring& c, int quarter_turns) {
    const int turns = ((quarter_turns % 4) + 4) % 4;
    if (turns == 0) return c;
    const int n = c.n();
    std::vector<PackedPiece> cur = serialize(c);
    std::vector<PackedPiece> next(cur.size());
    for (int t = 0; t < turns; ++t) {
        rotate_serialized(cur, n, next);
        cur.swap(next);
    }
    return coloring_from_pieces(n, c.q(), cur);
}

std::vector<PackedPiece> canonical_serialization(std::span<const PackedPiece> pieces, int n) {
    std::vector<PackedPiece> best(pieces.begin(), pieces.end());
    std::vector<PackedPiece> cur = best;
    std::vector<PackedPiece> next(cur.size());
    for (int t = 1; t < 4; ++t) {
        rotate_serialized(cur, n, next);
        cur.swap(next);
        if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) best = cur;
    }
    return best;
}

EdgeColoring canonical_coloring(const EdgeColoring& c) {
    const auto pieces = serialize(c);
    return coloring_from_pieces(c.n(), c.q(), canonical_serialization(pieces, c.n()));
}

int symmetry_order(std::span<const PackedPiece> pieces, int n) {
    std::vector<PackedPiece> cur(pieces.begin(), pieces.end());
    std::vector<PackedPiece> next(cur.size());
    int fixed = 1;
    for (int t = 1; t < 4; ++t) {
        rotate_serialized(cur, n, next);
        cur.swap(next);
        if (std::equal(cur.begin(), cur.end(), pieces.begin())) ++fixed;
    }
    return fixed;
}

int symmetry_order(const EdgeColoring& c) { return symmetry_order(serialize(c), c.n()); }

Piece rotate_piece(const Piece& p, int quarter_turns) {
    return Piece::unpack(rotate_packed(p.pack(), ((quarter_turns % 4) + 4) % 4));
}

CanonicalPiece canonicalize_piece(const Piece& p) {
    const PackedPiece x = p.pack();
    const PackedPiece r1 = rotate_packed(x, 1);
    const PackedPiece r2 = rotate_packed(x, 2);
    const PackedPiece r3 = rotate_packed(x, 3);
    const PackedPiece m = std::min({x, r1, r2, r3});
    const int orbit = (x == r1) ? 1 : (x == r2) ? 2 : 4;
    return CanonicalPiece{Piece::unpack(m), orbit};
}

PieceBag::PieceBag(int n, int q, ModelVariant model, std::map<Piece, int> counts)
    : n_(n), q_(q), model_(model), counts_(std::move(counts)) {
    check_dims(n, q);
    long long mass = 0;
    for (const auto& [type, count] : counts_) {
        if (count <= 0) throw std::invalid_argument("bag counts must be positive");
        for (Color e : type.edges)
            if (e >= q) throw std::invalid_argument("bag piece color out of range");
        if (model_ == ModelVariant::RotationsAllowed && canonicalize_piece(type).edges != type)
            throw std::invalid_argument("bag key is not canonical under the rotation model");
        mass += count;
    }
    if (mass != static_cast<long long>(n) * n)
        throw std::invalid_argument("bag mass " + std::to_string(mass) + " != n^2 = " +
                                    std::to_string(n * n));
}

int PieceBag::total() const {
    int sum = 0;
    for (const auto& [type, count] : counts_) sum += count;
    return sum;
}

int PieceBag::count(const Piece& type) const {
    auto it = counts_.find(type);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<PackedPiece> PieceBag::sorted_keys() const {
    std::vector<PackedPiece> keys;
    keys.reserve(static_cast<std::size_t>(n_ * n_));
    for (const auto& [type, count] : counts_) keys.insert(keys.end(), static_cast<std::size_t>(count), type.pack());
    return keys;  // map order is packed order
}

PieceBag extract_bag(const EdgeColoring& c, ModelVariant model) {
    std::vector<PackedPiece> pieces = serialize(c);
    if (model == ModelVariant::RotationsAllowed) {
        std::vector<PackedPiece> canon(pieces.size());
        std::vector<std::uint8_t> orbit(pieces.size());
        kernels::active().canonicalize(pieces, canon, orbit);
        pieces.swap(canon);
    }
    std::map<Piece, int> counts;
    for (PackedPiece p : pieces) ++counts[Piece::unpack(p)];
    return PieceBag(c.n(), c.q(), model, std::move(counts));
}

PieceTypeCensus piece_type_census(std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("census needs q >= 1");
    PieceTypeCensus census;
    census.count_r1 = q;
    census.count_r2 = q * (q - 1) / 2;
    census.count_r4 = (q * q * q * q - q * q) / 4;
    census.total = census.count_r1 + census.count_r2 + census.count_r4;
    return census;
}

double expected_multiplicity(int orbit, int n, int q) {
    if (orbit != 1 && orbit != 2 && orbit != 4)
        throw std::invalid_argument("orbit size must be 1, 2 or 4, got " + std::to_string(orbit));
    if (n < 1 || q < 1) throw std::invalid_argument("expected_multiplicity needs n, q >= 1");
    const double qd = q;
    return static_cast<double>(orbit) * static_cast<double>(n) * static_cast<double>(n) /
           (qd * qd * qd * qd);
}

}  // namespace jigsaw
