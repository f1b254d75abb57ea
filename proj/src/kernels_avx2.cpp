// Compiled with -mavx2; only reached through the dispatcher after a CPU check.

#include <immintrin.h>

#include "jigsaw/kernels.hpp"

namespace jigsaw::kernels::avx2 {

namespace {

inline __m256i rotr8(__m256i x, int bytes) {
    switch (bytes) {
        case 1: return _mm256_or_si256(_mm256_srli_epi32(x, 8), _mm256_slli_epi32(x, 24));
        case 2: return _mm256_or_si256(_mm256_srli_epi32(x, 16), _mm256_slli_epi32(x, 16));
        default: return _mm256_or_si256(_mm256_srli_epi32(x, 24), _mm256_slli_epi32(x, 8));
    }
}

inline __m256i gather_byte(const int* base, const std::int32_t* idx, __m256i low_byte) {
    const __m256i offsets = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx));
    return _mm256_and_si256(_mm256_i32gather_epi32(base, offsets, 1), low_byte);
}

}  // namespace

void pack(std::span<const Color> edges, std::span<const std::int32_t> north,
          std::span<const std::int32_t> east, std::span<const std::int32_t> south,
          std::span<const std::int32_t> west, std::span<PackedPiece> out) {
    const auto* base = reinterpret_cast<const int*>(edges.data());
    const __m256i low_byte = _mm256_set1_epi32(0xff);
    const std::size_t count = out.size();
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256i nv = gather_byte(base, north.data() + i, low_byte);
        const __m256i ev = gather_byte(base, east.data() + i, low_byte);
        const __m256i sv = gather_byte(base, south.data() + i, low_byte);
        const __m256i wv = gather_byte(base, west.data() + i, low_byte);
        const __m256i packed =
            _mm256_or_si256(_mm256_or_si256(_mm256_slli_epi32(nv, 24), _mm256_slli_epi32(ev, 16)),
                            _mm256_or_si256(_mm256_slli_epi32(sv, 8), wv));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), packed);
    }
    if (i < count)
        scalar::pack(edges, north.subspan(i), east.subspan(i), south.subspan(i), west.subspan(i),
                     out.subspan(i));
}

void canonicalize(std::span<const PackedPiece> in, std::span<PackedPiece> canon,
                  std::span<std::uint8_t> orbit) {
    const std::size_t count = in.size();
    const __m256i four = _mm256_set1_epi32(4);
    const __m256i one = _mm256_set1_epi32(1);
    const __m256i two = _mm256_set1_epi32(2);
    alignas(32) std::int32_t orbit_lanes[8];
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
        const __m256i r1 = rotr8(x, 1);
        const __m256i r2 = rotr8(x, 2);
        const __m256i r3 = rotr8(x, 3);
        const __m256i m = _mm256_min_epu32(_mm256_min_epu32(x, r1), _mm256_min_epu32(r2, r3));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(canon.data() + i), m);
        // r = 4 - 2*[x == rot2(x)] - [x == rot1(x)]; rot1-fixed implies rot2-fixed.
        const __m256i eq1 = _mm256_and_si256(_mm256_cmpeq_epi32(x, r1), one);
        const __m256i eq2 = _mm256_and_si256(_mm256_cmpeq_epi32(x, r2), two);
        const __m256i r = _mm256_sub_epi32(_mm256_sub_epi32(four, eq2), eq1);
        _mm256_store_si256(reinterpret_cast<__m256i*>(orbit_lanes), r);
        for (int k = 0; k < 8; ++k) orbit[i + static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(orbit_lanes[k]);
    }
    if (i < count) scalar::canonicalize(in.subspan(i), canon.subspan(i), orbit.subspan(i));
}

}  // namespace jigsaw::kernels::avx2
