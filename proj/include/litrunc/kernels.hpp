#pragma once

// Hot loops with a scalar reference implementation and x86 vector variants.
// Every variant must give bit-identical results to the scalar one, except
// `neumaier_sum`, whose lanes reassociate the sum (agreement to a few ulps).

#include <cstddef>
#include <cstdint>

namespace litrunc::kernels {

enum class Isa { Scalar, Avx2, Avx512 };

struct Table {
    Isa isa;
    // hi[i] -= lo[floor(n / (i*p))] - sp   for i in [i0, i1]
    void (*lucy_hi)(std::int64_t* hi, const std::uint32_t* lo, std::uint64_t n, std::uint64_t p,
                    std::uint32_t sp, std::uint64_t i0, std::uint64_t i1);
    // lo[v] -= lo[floor(v / p)] - sp      for v = v1 down to v0 (v0 >= 2)
    void (*lucy_lo)(std::uint32_t* lo, std::uint64_t p, std::uint32_t sp, std::uint64_t v0, std::uint64_t v1);
    // out[b] = popcount of words [8b, 8b+8)
    void (*popcount_blocks)(const std::uint64_t* words, std::size_t nblocks, std::uint32_t* out);
    // Compensated accumulation of xs into (sum, comp).
    void (*neumaier_sum)(const double* xs, std::size_t count, double& sum, double& comp);
};

// Largest exact operand for the floating-point quotients in lucy_hi/lucy_lo.
inline constexpr std::uint64_t kLucyExactLimit = std::uint64_t{1} << 52;

bool supported(Isa isa);
Isa detected();               // best ISA of this CPU that was compiled in
const Table& table(Isa isa);  // throws DomainError if unsupported
const Table& active();        // detected(), or LITRUNC_SIMD=scalar|avx2|avx512
const char* name(Isa isa);

} // namespace litrunc::kernels
