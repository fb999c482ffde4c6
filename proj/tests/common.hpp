#pragma once

#include "litrunc/primes.hpp"

#include <cmath>
#include <vector>

namespace testutil {

// One sieve to 10^8 shared by every case in a binary.
inline const litrunc::PrimeTable& table() {
    static const litrunc::PrimeTable t;
    return t;
}

inline bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

inline std::vector<double> log_grid(double a, double b, int count) {
    std::vector<double> v;
    for (int k = 0; k < count; ++k) v.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * k / (count - 1)));
    return v;
}

// trial division, deliberately naive
inline bool is_prime_td(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace testutil
