#include "kernels_impl.hpp"
#include "litrunc/error.hpp"

#include <cstdlib>
#include <string_view>

namespace litrunc::kernels {

bool supported(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
#if defined(LITRUNC_HAVE_X86_KERNELS)
    case Isa::Avx2:
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    case Isa::Avx512:
        return supported(Isa::Avx2) && __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq") &&
               __builtin_cpu_supports("avx512vl");
#endif
    default:
        return false;
    }
}

Isa detected() {
    static const Isa best = supported(Isa::Avx512) ? Isa::Avx512 : supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    return best;
}

const Table& table(Isa isa) {
    if (!supported(isa)) throw DomainError("kernels", std::string("ISA not available: ") + name(isa));
    switch (isa) {
#if defined(LITRUNC_HAVE_X86_KERNELS)
    case Isa::Avx2: return detail::avx2_table;
    case Isa::Avx512: return detail::avx512_table;
#endif
    default: return detail::scalar_table;
    }
}

const Table& active() {
    static const Table& t = [] () -> const Table& {
        const char* env = std::getenv("LITRUNC_SIMD");
        if (env) {
            const std::string_view v(env);
            for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Avx512})
                if (v == name(isa) && supported(isa)) return table(isa);
        }
        return table(detected());
    }();
    return t;
}

const char* name(Isa isa) {
    switch (isa) {
    case Isa::Avx2: return "avx2";
    case Isa::Avx512: return "avx512";
    default: return "scalar";
    }
}

} // namespace litrunc::kernels
