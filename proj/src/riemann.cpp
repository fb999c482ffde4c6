#include "litrunc/riemann.hpp"
#include "litrunc/error.hpp"
#include "litrunc/logint.hpp"

#include <cmath>

namespace litrunc {

int mobius(unsigned r) {
    if (r == 0) throw DomainError("riemann", "mobius: r must be positive");
    int mu = 1;
    for (unsigned p = 2; p * p <= r; ++p) {
        if (r % p) continue;
        r /= p;
        if (r % p == 0) return 0;
        mu = -mu;
    }
    return r > 1 ? -mu : mu;
}

double riemann_r(double n, int terms) {
    if (!(n >= 2.0)) throw DomainError("riemann", "riemann_r: n must be >= 2");
    if (terms < 1) throw DomainError("riemann", "riemann_r: terms must be >= 1");
    const double L = std::log(n);
    const auto top = static_cast<unsigned>(std::floor(L / std::log(2.0) + 1e-12));
    double sum = 0, comp = 0;
    int used = 0;
    for (unsigned r = 1; r <= top && used < terms; ++r) {
        const int mu = mobius(r);
        if (mu == 0) continue;
        ++used;
        const double t = mu * li(std::exp(L / r)) / r;
        const double u = sum + t;
        comp += std::fabs(sum) >= std::fabs(t) ? (sum - u) + t : (t - u) + sum;
        sum = u;
    }
    return sum + comp;
}

} // namespace litrunc
