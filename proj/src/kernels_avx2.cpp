#include "kernels_impl.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>

// Quotients are formed as correctly rounded double divisions of exact
// operands (< 2^52); for such operands floor(fl(a/b)) == floor(a/b), so no
// integer correction step is needed.

namespace litrunc::kernels::detail {
namespace {

// double in [0, 2^52) holding an integer -> int64 lanes
inline __m256i to_i64(__m256d q) {
    const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(q, magic)), _mm256_castpd_si256(magic));
}

void lucy_hi(std::int64_t* hi, const std::uint32_t* lo, std::uint64_t n, std::uint64_t p,
             std::uint32_t sp, std::uint64_t i0, std::uint64_t i1) {
    const double nd = static_cast<double>(n), pd = static_cast<double>(p);
    std::uint64_t i = i0;
    if (i1 >= 3 && i + 3 <= i1) {
        const __m256d vn = _mm256_set1_pd(nd), vp = _mm256_set1_pd(pd), four = _mm256_set1_pd(4.0);
        const __m256i vsp = _mm256_set1_epi64x(sp);
        const double id = static_cast<double>(i);
        __m256d vi = _mm256_setr_pd(id, id + 1, id + 2, id + 3);
        for (; i + 3 <= i1; i += 4, vi = _mm256_add_pd(vi, four)) {
            const __m256d q = _mm256_floor_pd(_mm256_div_pd(vn, _mm256_mul_pd(vi, vp)));
            const __m128i g32 = _mm256_i64gather_epi32(reinterpret_cast<const int*>(lo), to_i64(q), 4);
            const __m256i g = _mm256_cvtepu32_epi64(g32);
            __m256i h = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + i));
            h = _mm256_sub_epi64(h, _mm256_sub_epi64(g, vsp));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(hi + i), h);
        }
    }
    for (; i <= i1; ++i) {
        const auto q = static_cast<std::uint64_t>(nd / (static_cast<double>(i) * pd));
        hi[i] -= static_cast<std::int64_t>(lo[q]) - sp;
    }
}

void lucy_lo(std::uint32_t* lo, std::uint64_t p, std::uint32_t sp, std::uint64_t v0, std::uint64_t v1) {
    const double pd = static_cast<double>(p);
    std::uint64_t v = v1;
    // blocks [v-7, v]; all gathers read indices below the block or inside it
    // before the store, which is what the descending scalar loop sees too.
    if (v1 >= v0 + 7) {
        const __m256d vp = _mm256_set1_pd(pd), eight = _mm256_set1_pd(8.0);
        const __m256i vsp = _mm256_set1_epi32(static_cast<int>(sp));
        const double vd = static_cast<double>(v - 7);
        __m256d va = _mm256_setr_pd(vd, vd + 1, vd + 2, vd + 3);
        __m256d vb = _mm256_setr_pd(vd + 4, vd + 5, vd + 6, vd + 7);
        for (; v >= v0 + 7; v -= 8, va = _mm256_sub_pd(va, eight), vb = _mm256_sub_pd(vb, eight)) {
            const __m128i qa = _mm256_cvttpd_epi32(_mm256_div_pd(va, vp));
            const __m128i qb = _mm256_cvttpd_epi32(_mm256_div_pd(vb, vp));
            const __m256i q = _mm256_set_m128i(qb, qa);
            const __m256i g = _mm256_i32gather_epi32(reinterpret_cast<const int*>(lo), q, 4);
            auto* dst = reinterpret_cast<__m256i*>(lo + v - 7);
            __m256i h = _mm256_loadu_si256(dst);
            h = _mm256_sub_epi32(h, _mm256_sub_epi32(g, vsp));
            _mm256_storeu_si256(dst, h);
        }
    }
    for (; v >= v0; --v)
        lo[v] -= lo[static_cast<std::uint64_t>(static_cast<double>(v) / pd)] - sp;
}

} // namespace

// Nibble lookup popcount (Mula et al.), summed per 512-bit block.
void avx2_popcount_blocks(const std::uint64_t* words, std::size_t nblocks, std::uint32_t* out) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    for (std::size_t b = 0; b < nblocks; ++b) {
        __m256i acc = _mm256_setzero_si256();
        for (int half = 0; half < 2; ++half) {
            const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + 8 * b + 4 * half));
            const __m256i lo4 = _mm256_and_si256(x, low);
            const __m256i hi4 = _mm256_and_si256(_mm256_srli_epi16(x, 4), low);
            const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo4), _mm256_shuffle_epi8(lut, hi4));
            acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
        }
        const __m128i s = _mm_add_epi64(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
        out[b] = static_cast<std::uint32_t>(_mm_cvtsi128_si64(s) + _mm_extract_epi64(s, 1));
    }
}

void avx2_neumaier_sum(const double* xs, std::size_t count, double& sum, double& comp) {
    std::size_t k = 0;
    double s = sum, c = comp;
    if (count >= 8) {
        const __m256d sign = _mm256_set1_pd(-0.0);
        __m256d vs = _mm256_setzero_pd(), vc = _mm256_setzero_pd();
        for (; k + 4 <= count; k += 4) {
            const __m256d x = _mm256_loadu_pd(xs + k);
            const __m256d t = _mm256_add_pd(vs, x);
            const __m256d big_s = _mm256_cmp_pd(_mm256_andnot_pd(sign, vs), _mm256_andnot_pd(sign, x), _CMP_GE_OQ);
            const __m256d e_s = _mm256_add_pd(_mm256_sub_pd(vs, t), x);
            const __m256d e_x = _mm256_add_pd(_mm256_sub_pd(x, t), vs);
            vc = _mm256_add_pd(vc, _mm256_blendv_pd(e_x, e_s, big_s));
            vs = t;
        }
        alignas(32) double ls[4], lc[4];
        _mm256_store_pd(ls, vs);
        _mm256_store_pd(lc, vc);
        for (int l = 0; l < 4; ++l) {
            const double t = s + ls[l];
            c += std::fabs(s) >= std::fabs(ls[l]) ? (s - t) + ls[l] : (ls[l] - t) + s;
            s = t;
            c += lc[l];
        }
    }
    for (; k < count; ++k) {
        const double t = s + xs[k];
        c += std::fabs(s) >= std::fabs(xs[k]) ? (s - t) + xs[k] : (xs[k] - t) + s;
        s = t;
    }
    sum = s;
    comp = c;
}

const Table avx2_table{Isa::Avx2, lucy_hi, lucy_lo, avx2_popcount_blocks, avx2_neumaier_sum};

} // namespace litrunc::kernels::detail
