#include "litrunc/special.hpp"
#include "litrunc/error.hpp"

#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

namespace litrunc {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

double residual_of(double w, double t) { return w * std::exp(w) - t; }

} // namespace

WEval lambert_w_m1(double t) {
    if (!(t >= -kInvE && t < 0.0))
        throw DomainError("special", "lambert_w_m1: argument outside [-1/e, 0): " + std::to_string(t));

    WEval r;
    r.t = t;
    // 1 + e*t loses everything near the branch point; treat anything within
    // rounding of -1/e as the branch point itself.
    const double q = 1.0 + std::numbers::e * t;
    if (q <= 4.0 * std::numeric_limits<double>::epsilon()) {
        r.w = -1.0;
        r.residual = residual_of(-1.0, t);
        return r;
    }

    double w;
    if (t < -0.25) {
        const double p = -std::sqrt(2.0 * q);
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else {
        const double l1 = std::log(-t);
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    if (w > -1.0) w = -1.0 - 1e-12;

    // Halley on f(w) = w e^w - t
    for (int k = 0; k < 50; ++k) {
        const double ew = std::exp(w);
        const double f = w * ew - t;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        double next = w - step;
        if (next > -1.0) next = 0.5 * (w - 1.0);
        r.iterations = k + 1;
        const bool done = std::fabs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(next);
        w = next;
        if (done) break;
    }
    r.w = w;
    r.residual = residual_of(w, t);
    return r;
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("special", "log_gamma: argument must be positive: " + std::to_string(x));
    static constexpr std::array<double, 9> c{
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    // below 1/2 the series loses accuracy; step up with Gamma(x) = Gamma(x+1)/x
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    // exact zeros, where a relative criterion would be meaningless
    if (x == 1.0 || x == 2.0) return 0.0;

    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double factorial_root_ratio(double x) {
    if (!(x >= 1.0)) throw DomainError("special", "factorial_root_ratio: x must be >= 1");
    return std::exp(log_gamma(x + 1.0) / x) / x;
}

RobbinsBounds robbins_log_bounds(double z) {
    if (!(z >= 1.0)) throw DomainError("special", "robbins_bounds: z must be >= 1");
    const double base = 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(z) - z;
    return {base + 1.0 / (12.0 * z + 1.0), base + 1.0 / (12.0 * z)};
}

RobbinsBounds robbins_bounds(double z) {
    const auto lb = robbins_log_bounds(z);
    return {std::exp(lb.lower), std::exp(lb.upper)};
}

double e_plus() { return std::sqrt(2.0 * std::numbers::pi) * std::exp(1.0 / 12.0); }

double solve_linear_exponential_log(double log_y, double n) {
    if (!(n > 1.0)) throw DomainError("special", "solve_linear_exponential: n must exceed 1");
    const double arg = log_y / (std::numbers::e * std::log(n));
    if (!(arg >= -kInvE && arg < 0.0))
        throw DomainError("special", "solve_linear_exponential: W argument " + std::to_string(arg) +
                                         " outside [-1/e, 0)");
    return log_y / lambert_w_m1(arg).w;
}

double solve_linear_exponential(double y, double n) {
    if (!(y > 0.0 && y < 1.0)) throw DomainError("special", "solve_linear_exponential: need 0 < y < 1");
    return solve_linear_exponential_log(std::log(y), n);
}

} // namespace litrunc
