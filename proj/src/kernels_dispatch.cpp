#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "jigsaw/kernels.hpp"

namespace jigsaw::kernels {

namespace {

constexpr KernelTable kScalarTable{Level::Scalar, &scalar::pack, &scalar::canonicalize};
#if defined(JIGSAW_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Level::Avx2, &avx2::pack, &avx2::canonicalize};
#endif

bool cpu_has_avx2() {
#if defined(JIGSAW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Level initial_level() {
    if (const char* env = std::getenv("JIG_SIMD")) {
        const std::string choice(env);
        if (choice == "scalar") return Level::Scalar;
        if (choice == "avx2" && cpu_has_avx2()) return Level::Avx2;
    }
    return cpu_has_avx2() ? Level::Avx2 : Level::Scalar;
}

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{&table(initial_level())};
    return slot;
}

}  // namespace

std::string_view level_name(Level level) { return level == Level::Scalar ? "scalar" : "avx2"; }

bool level_available(Level level) {
    return level == Level::Scalar || (level == Level::Avx2 && cpu_has_avx2());
}

const KernelTable& table(Level level) {
    if (level == Level::Scalar) return kScalarTable;
#if defined(JIGSAW_HAVE_AVX2)
    if (cpu_has_avx2()) return kAvx2Table;
#endif
    throw std::runtime_error("kernel level " + std::string(level_name(level)) +
                             " is not available on this build or CPU");
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active_level(Level level) { active_slot().store(&table(level), std::memory_order_release); }

GatherPlan make_gather_plan(int n, std::size_t boards) {
    GatherPlan plan;
    plan.n = n;
    const auto side = static_cast<std::size_t>(n);
    const std::size_t grid = side * (side + 1);
    plan.stride = 2 * grid;
    const std::size_t cells = side * side * boards;
    plan.north.reserve(cells);
    plan.east.reserve(cells);
    plan.south.reserve(cells);
    plan.west.reserve(cells);
    for (std::size_t b = 0; b < boards; ++b) {
        const std::size_t h0 = b * plan.stride;
        const std::size_t v0 = h0 + grid;
        for (std::size_t r = 0; r < side; ++r) {
            for (std::size_t c = 0; c < side; ++c) {
                plan.north.push_back(static_cast<std::int32_t>(h0 + r * side + c));
                plan.south.push_back(static_cast<std::int32_t>(h0 + (r + 1) * side + c));
                plan.west.push_back(static_cast<std::int32_t>(v0 + r * (side + 1) + c));
                plan.east.push_back(static_cast<std::int32_t>(v0 + r * (side + 1) + c + 1));
            }
        }
    }
    return plan;
}

}  // namespace jigsaw::kernels
