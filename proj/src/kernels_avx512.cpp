#include "kernels_impl.hpp"

#include <immintrin.h>

// Same exactness argument as the AVX2 file: operands stay below 2^52.

namespace litrunc::kernels::detail {
namespace {

void lucy_hi(std::int64_t* hi, const std::uint32_t* lo, std::uint64_t n, std::uint64_t p,
             std::uint32_t sp, std::uint64_t i0, std::uint64_t i1) {
    const double nd = static_cast<double>(n), pd = static_cast<double>(p);
    std::uint64_t i = i0;
    if (i + 7 <= i1) {
        const __m512d vn = _mm512_set1_pd(nd), vp = _mm512_set1_pd(pd), eight = _mm512_set1_pd(8.0);
        const __m512i vsp = _mm512_set1_epi64(sp);
        const double id = static_cast<double>(i);
        __m512d vi = _mm512_setr_pd(id, id + 1, id + 2, id + 3, id + 4, id + 5, id + 6, id + 7);
        for (; i + 7 <= i1; i += 8, vi = _mm512_add_pd(vi, eight)) {
            const __m512d q = _mm512_div_pd(vn, _mm512_mul_pd(vi, vp));
            const __m256i g32 = _mm512_i64gather_epi32(_mm512_cvttpd_epi64(q), lo, 4);
            const __m512i g = _mm512_cvtepu32_epi64(g32);
            __m512i h = _mm512_loadu_si512(hi + i);
            h = _mm512_sub_epi64(h, _mm512_sub_epi64(g, vsp));
            _mm512_storeu_si512(hi + i, h);
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
    if (v1 >= v0 + 15) {
        const __m512d vp = _mm512_set1_pd(pd), sixteen = _mm512_set1_pd(16.0);
        const __m512i vsp = _mm512_set1_epi32(static_cast<int>(sp));
        const double vd = static_cast<double>(v - 15);
        __m512d va = _mm512_setr_pd(vd, vd + 1, vd + 2, vd + 3, vd + 4, vd + 5, vd + 6, vd + 7);
        __m512d vb = _mm512_add_pd(va, _mm512_set1_pd(8.0));
        for (; v >= v0 + 15; v -= 16, va = _mm512_sub_pd(va, sixteen), vb = _mm512_sub_pd(vb, sixteen)) {
            const __m256i qa = _mm512_cvttpd_epi32(_mm512_div_pd(va, vp));
            const __m256i qb = _mm512_cvttpd_epi32(_mm512_div_pd(vb, vp));
            const __m512i q = _mm512_inserti64x4(_mm512_castsi256_si512(qa), qb, 1);
            const __m512i g = _mm512_i32gather_epi32(q, lo, 4);
            std::uint32_t* dst = lo + v - 15;
            __m512i h = _mm512_loadu_si512(dst);
            h = _mm512_sub_epi32(h, _mm512_sub_epi32(g, vsp));
            _mm512_storeu_si512(dst, h);
        }
    }
    for (; v >= v0; --v)
        lo[v] -= lo[static_cast<std::uint64_t>(static_cast<double>(v) / pd)] - sp;
}

} // namespace

const Table avx512_table{Isa::Avx512, lucy_hi, lucy_lo, avx2_popcount_blocks, avx2_neumaier_sum};

} // namespace litrunc::kernels::detail
