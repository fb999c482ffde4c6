#pragma once

#include "litrunc/kernels.hpp"

namespace litrunc::kernels::detail {

extern const Table scalar_table;
#if defined(LITRUNC_HAVE_X86_KERNELS)
extern const Table avx2_table;
extern const Table avx512_table;

// shared by the AVX-512 table
void avx2_popcount_blocks(const std::uint64_t* words, std::size_t nblocks, std::uint32_t* out);
void avx2_neumaier_sum(const double* xs, std::size_t count, double& sum, double& comp);
#endif

} // namespace litrunc::kernels::detail
