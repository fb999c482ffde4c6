#include "kernels_impl.hpp"

#include <bit>
#include <cmath>

namespace litrunc::kernels::detail {
namespace {

void lucy_hi(std::int64_t* hi, const std::uint32_t* lo, std::uint64_t n, std::uint64_t p,
             std::uint32_t sp, std::uint64_t i0, std::uint64_t i1) {
    const std::uint64_t np = n / p;
    for (std::uint64_t i = i0; i <= i1; ++i)
        hi[i] -= static_cast<std::int64_t>(lo[np / i]) - sp;
}

void lucy_lo(std::uint32_t* lo, std::uint64_t p, std::uint32_t sp, std::uint64_t v0, std::uint64_t v1) {
    for (std::uint64_t v = v1; v >= v0; --v)
        lo[v] -= lo[v / p] - sp;
}

void popcount_blocks(const std::uint64_t* words, std::size_t nblocks, std::uint32_t* out) {
    for (std::size_t b = 0; b < nblocks; ++b) {
        std::uint32_t c = 0;
        for (int k = 0; k < 8; ++k) c += std::popcount(words[8 * b + k]);
        out[b] = c;
    }
}

void neumaier_sum(const double* xs, std::size_t count, double& sum, double& comp) {
    double s = sum, c = comp;
    for (std::size_t k = 0; k < count; ++k) {
        const double x = xs[k];
        const double t = s + x;
        c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    sum = s;
    comp = c;
}

} // namespace

const Table scalar_table{Isa::Scalar, lucy_hi, lucy_lo, popcount_blocks, neumaier_sum};

} // namespace litrunc::kernels::detail
