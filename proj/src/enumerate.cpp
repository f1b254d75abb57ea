#include "jigsaw/enumerate.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "jigsaw/kernels.hpp"

namespace jigsaw {

namespace {
constexpr std::size_t kBatchBoards = 512;
}

std::uint64_t coloring_space_size(int n, int q, std::uint64_t budget) {
    if (n < 1 || q < 1) throw std::invalid_argument("coloring space needs n, q >= 1");
    const auto edges = 2ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1);
    std::uint64_t size = 1;
    for (std::uint64_t k = 0; k < edges; ++k) {
        if (size > budget / static_cast<std::uint64_t>(q))
            throw BudgetExceeded("q^(2n(n+1)) = " + std::to_string(q) + "^" + std::to_string(edges) +
                                 " colorings exceeds the enumeration budget of " +
                                 std::to_string(budget));
        size *= static_cast<std::uint64_t>(q);
    }
    return size;
}

EdgeColoring coloring_from_edges(int n, int q, std::span<const Color> edges) {
    const auto grid = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
    std::vector<Color> h(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(grid));
    std::vector<Color> v(edges.begin() + static_cast<std::ptrdiff_t>(grid),
                         edges.begin() + static_cast<std::ptrdiff_t>(2 * grid));
    return EdgeColoring(n, q, std::move(h), std::move(v));
}

void for_each_coloring(int n, int q, std::uint64_t budget,
                       const std::function<void(const ColoringBatch&)>& visit) {
    const std::uint64_t total = coloring_space_size(n, q, budget);
    const auto cells = static_cast<std::size_t>(n * n);
    const std::size_t boards = static_cast<std::size_t>(std::min<std::uint64_t>(total, kBatchBoards));
    const kernels::GatherPlan plan = kernels::make_gather_plan(n, boards);
    const std::size_t stride = plan.stride;
    const kernels::KernelTable& k = kernels::active();

    std::vector<Color> digits(stride, 0);
    std::vector<Color> edges(boards * stride + kernels::kGatherPad, 0);
    std::vector<PackedPiece> pieces(boards * cells);
    std::vector<PackedPiece> canon(boards * cells);
    std::vector<std::uint8_t> orbit(boards * cells);

    std::uint64_t index = 0;
    while (index < total) {
        const auto batch = static_cast<std::size_t>(std::min<std::uint64_t>(boards, total - index));
        for (std::size_t b = 0; b < batch; ++b) {
            std::copy(digits.begin(), digits.end(), edges.begin() + static_cast<std::ptrdiff_t>(b * stride));
            for (std::size_t d = 0; d < stride; ++d) {
                if (++digits[d] < q) break;
                digits[d] = 0;
            }
        }
        const std::size_t used = batch * cells;
        const std::span<const Color> edge_view(edges);
        k.pack(edge_view, std::span(plan.north).first(used), std::span(plan.east).first(used),
               std::span(plan.south).first(used), std::span(plan.west).first(used),
               std::span(pieces).first(used));
        k.canonicalize(std::span<const PackedPiece>(pieces).first(used), std::span(canon).first(used),
                       std::span(orbit).first(used));
        ColoringBatch view;
        view.n = n;
        view.q = q;
        view.first_index = index;
        view.boards = batch;
        view.stride = stride;
        view.edges = edge_view.first(batch * stride);
        view.pieces = std::span<const PackedPiece>(pieces).first(used);
        view.canon = std::span<const PackedPiece>(canon).first(used);
        view.orbit = std::span<const std::uint8_t>(orbit).first(used);
        visit(view);
        index += batch;
    }
}

}  // namespace jigsaw
