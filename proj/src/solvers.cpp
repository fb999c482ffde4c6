#include "litrunc/solvers.hpp"
#include "litrunc/error.hpp"
#include "litrunc/logint.hpp"
#include "litrunc/special.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

namespace litrunc {

namespace {

constexpr std::uintmax_t kMaxIter = 200;

struct XTol {
    bool operator()(double a, double b) const { return std::fabs(a - b) <= 1e-13 * std::max(1.0, std::fabs(a)); }
};

template <class F> std::pair<double, int> bracketed_root(F f, double lo, double hi, double flo, double fhi) {
    if (flo == 0) return {lo, 0};
    if (fhi == 0) return {hi, 0};
    std::uintmax_t it = kMaxIter;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, XTol{}, it);
    return {0.5 * (r.first + r.second), static_cast<int>(it)};
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::ExactPrime: return "ExactPrime";
    case Method::AvgPrimeIntegral: return "AvgPrimeIntegral";
    case Method::AvgPrimeAsymptotic: return "AvgPrimeAsymptotic";
    case Method::ClosedFormW: return "ClosedFormW";
    case Method::LimitSimple: return "LimitSimple";
    case Method::LimitLogLog: return "LimitLogLog";
    }
    return "?";
}

TruncationSolution exact_truncation_for(u64 n, u64 pi_n) {
    if (n < 2) throw DomainError("solvers", "exact_truncation: n must be >= 2");
    const double nd = static_cast<double>(n), target = static_cast<double>(pi_n);
    TruncationSolution s;
    s.n = nd;
    s.constraint_v = target;
    s.method = Method::ExactPrime;

    // Below 11 the plain expansion may already exceed pi(n) at x = 1; then
    // only the subtractive form can come down to it. (At n = 7, 8 it cannot,
    // n/ln n < pi(n) there, and the ordinary expansion is used.)
    if (n < 11 && nd / std::log(nd) >= target) {
        s.signed_regime = true;
        auto f = [&](double x) { return li_expansion_signed(nd, x) - target; };
        double hi = 2.0;
        while (f(hi) > 0) hi *= 2;
        const auto [x, it] = bracketed_root(f, 1.0, hi, f(1.0), f(hi));
        s.x = x;
        s.iterations = it;
        s.residual = li_expansion_signed(nd, x) - target;
        return s;
    }

    auto f = [&](double x) { return li_expansion(nd, x).value - target; };
    const double lo = 1.0, flo = f(lo);
    if (flo > 0) throw NoRootError("solvers", "exact_truncation: n/ln n already exceeds pi(n)", lo, flo, lo, flo);
    double hi = (nd >= std::exp(4.0 / 3.0) ? stieltjes_tau(nd).tau : 1.0) + 10.0;
    double fhi = f(hi);
    for (int k = 0; k < 4 && fhi < 0; ++k) {
        hi *= 2;
        fhi = f(hi);
    }
    if (fhi < 0) throw NoRootError("solvers", "exact_truncation: bracket exhausted", lo, flo, hi, fhi);
    const auto [x, it] = bracketed_root(f, lo, hi, flo, fhi);
    s.x = x;
    s.iterations = it;
    s.residual = f(x);
    return s;
}

TruncationSolution exact_truncation(u64 n, const PrimeTable& table) { return exact_truncation_for(n, table.pi(n)); }

int count_sign_changes(double n, double target, double lo, double hi, int samples) {
    int changes = 0;
    double prev = li_expansion(n, lo).value - target;
    for (int k = 1; k <= samples; ++k) {
        const double f = li_expansion(n, lo + (hi - lo) * k / samples).value - target;
        if ((prev < 0 && f >= 0) || (prev > 0 && f <= 0)) ++changes;
        prev = f;
    }
    return changes;
}

double source_integral_argmin(double n) {
    // d/dx [Gamma(x+1) I(x)] = Gamma(x+1) I(x) [psi(x+1) - <ln u>_x]: the
    // mean of ln u under the weight e^u u^-(x+1) falls with x while psi
    // rises, so the bracket holds a single zero.
    auto phi = [n](double x) {
        const auto m = source_moments(n, x);
        return boost::math::digamma(x + 1.0) - m.i1 / m.i0;
    };
    double lo = 0.0, hi = std::log(n) + 5.0;
    const double flo = phi(lo);
    if (flo >= 0) return 0.0;
    double fhi = phi(hi);
    while (fhi <= 0) {
        lo = hi;
        hi *= 2;
        fhi = phi(hi);
    }
    return bracketed_root(phi, lo, hi, phi(lo), fhi).first;
}

TruncationSolution avg_truncation_for(double n, double v) {
    if (!(n >= 4)) throw DomainError("solvers", "avg_truncation: n must be >= 4");
    TruncationSolution s;
    s.n = n;
    s.constraint_v = v;
    s.method = Method::AvgPrimeIntegral;

    const double xmin = source_integral_argmin(n);
    const double smin = source_integral(n, xmin);
    if (smin > v) {
        // The integral never comes down to the prime-power sum: report the
        // closest approach rather than inventing a root.
        s.x = xmin;
        s.residual = smin - v;
        s.exact_root = false;
        return s;
    }
    auto f = [&](double x) { return source_integral(n, x) - v; };
    const double f0 = f(0.0);
    if (f0 < 0) throw NoRootError("solvers", "avg_truncation: prime-power sum exceeds li(n)", 0.0, f0, xmin, smin - v);
    const auto [x, it] = bracketed_root(f, 0.0, xmin, f0, smin - v);
    s.x = x;
    s.iterations = it;
    s.residual = f(x);
    return s;
}

TruncationSolution avg_truncation(u64 n, const PrimeTable& table) {
    if (n < 4) throw DomainError("solvers", "avg_truncation: n must be >= 4");
    return avg_truncation_for(static_cast<double>(n), prime_power_sum(n, table).value);
}

TruncationSolution avg_truncation_asymptotic_for(double n, double d) {
    if (!(n >= 9)) throw DomainError("solvers", "avg_truncation_asymptotic: undefined below n = 9");
    TruncationSolution s;
    s.n = n;
    s.constraint_v = d * n;
    s.method = Method::ClosedFormW;
    s.x = solve_linear_exponential_log(std::log(d), n);
    return s;
}

TruncationSolution avg_truncation_asymptotic(u64 n, const PrimeTable& table) {
    if (n < 9) throw DomainError("solvers", "avg_truncation_asymptotic: undefined below n = 9");
    return avg_truncation_asymptotic_for(static_cast<double>(n), density(n, table).d);
}

TruncationSolution avg_truncation_first_order_for(double n, double beta) {
    if (!(n >= 4)) throw DomainError("solvers", "avg_truncation_first_order: n must be >= 4");
    const double arg = (beta - 1.0) / std::numbers::e;
    if (!(arg >= -1.0 / std::numbers::e && arg < 0))
        throw DomainError("solvers", "avg_truncation_first_order: beta = " + std::to_string(beta) +
                                         " puts the W argument outside [-1/e, 0)");
    const double L = std::log(n);
    TruncationSolution s;
    s.n = n;
    s.constraint_v = beta;
    s.method = Method::AvgPrimeAsymptotic;
    s.x = ((beta - 1.0) * L - std::log(L)) / lambert_w_m1(arg).w;
    return s;
}

TruncationSolution avg_truncation_first_order(u64 n, const PrimeTable&) {
    if (n < 4) throw DomainError("solvers", "avg_truncation_first_order: n must be >= 4");
    return avg_truncation_first_order_for(static_cast<double>(n), beta_n(n));
}

double limit_constant() {
    static const double c = -0.5 / lambert_w_m1(-0.5 / std::numbers::e).w;
    return c;
}

TruncationSolution limit_form(double n, LimitVariant v) {
    if (!(n > std::numbers::e)) throw DomainError("solvers", "limit_form: n must exceed e");
    const double c = limit_constant(), L = std::log(n);
    TruncationSolution s;
    s.n = n;
    if (v == LimitVariant::Simple) {
        s.method = Method::LimitSimple;
        s.x = c * L;
    } else {
        s.method = Method::LimitLogLog;
        s.x = c * L + 2.0 * c * std::log(L);
    }
    return s;
}

} // namespace litrunc
