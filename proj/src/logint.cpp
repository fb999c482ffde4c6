#include "litrunc/logint.hpp"
#include "litrunc/error.hpp"
#include "litrunc/quad.hpp"
#include "litrunc/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace litrunc {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double checked(const QuadResult& q, const char* what) {
    if (!q.converged) throw QuadratureError("logint", what, q.abs_error);
    return q.value;
}

// int_{ln 2}^{ln n} e^u/u du
double li_tail(double n, double rel_tol) {
    const double b = std::log(n);
    const auto q = integrate([](double u) { return std::exp(u) / u; }, kLn2, b, rel_tol, 1e-300);
    return checked(q, "li quadrature did not converge");
}

double compute_li2() {
    auto shi = [](double u) { return u == 0.0 ? 2.0 : 2.0 * std::sinh(u) / u; };
    const double a = checked(integrate(shi, 0.0, kLn2, 1e-15), "li(2) symmetric part");
    // E1(ln 2): e^{-v}/v falls below 1e-22 relative well before v = 60
    const double e1 = checked(integrate([](double v) { return std::exp(-v) / v; }, kLn2, 60.0, 1e-15),
                              "li(2) exponential-integral part");
    return a - e1;
}

} // namespace

double li2() {
    static const double v = compute_li2();
    return v;
}

double li(double n, double rel_tol) {
    if (!(n > 1.0)) throw DomainError("logint", "li: n must exceed 1, got " + std::to_string(n));
    if (n == 2.0) return li2();
    // below 2 the integral runs backwards towards the singularity at t = 1
    return li2() + li_tail(n, rel_tol);
}

double li(double n) { return li(n, kLiRelTol); }

ExpansionEval li_expansion(double n, double x) {
    if (!(n > 1.0)) throw DomainError("logint", "li_expansion: n must exceed 1");
    if (!(x >= 1.0)) throw DomainError("logint", "li_expansion: x must be >= 1");
    const double L = std::log(n);
    const double fx = std::floor(x);
    ExpansionEval e;
    e.n = n;
    e.x = x;
    e.head_terms = static_cast<int>(fx);
    e.fractional_weight = x - fx;

    // running product term_k = k!/L^k with compensated summation
    double s = 0, c = 0, term = 1.0;
    for (int k = 0; k < e.head_terms; ++k) {
        if (k > 0) term *= k / L;
        const double t = s + term;
        c += std::fabs(s) >= std::fabs(term) ? (s - t) + term : (term - t) + s;
        s = t;
    }
    double value = (n / L) * (s + c);
    if (e.fractional_weight > 0.0)
        value += e.fractional_weight * std::exp(log_gamma(fx + 1.0) + std::log(n) - (fx + 1.0) * std::log(L));
    e.value = value;
    return e;
}

double li_expansion_signed(double n, double x) {
    if (!(n >= 2.0 && n < 11.0)) throw DomainError("logint", "li_expansion_signed: n must lie in [2, 11)");
    if (!(x >= 1.0)) throw DomainError("logint", "li_expansion_signed: x must be >= 1");
    const double L = std::log(n);
    const double fx = std::floor(x);
    const int head = static_cast<int>(fx);
    double sub = 0, term = 1.0;
    for (int k = 1; k < head; ++k) {
        term *= k / L;
        sub += term;
    }
    const double w = x - fx;
    if (w > 0.0) sub += w * std::exp(log_gamma(fx + 1.0) - fx * std::log(L));
    return (n / L) * (1.0 - sub);
}

SourceMoments source_moments(double n, double x, double rel_tol) {
    if (!(n > 2.0)) throw DomainError("logint", "source integral: n must exceed 2");
    if (!(x >= 0.0)) throw DomainError("logint", "source integral: x must be >= 0");
    const double b = std::log(n), s = x + 1.0;
    SourceMoments m;
    m.i0 = checked(integrate([s](double u) { return std::exp(u - s * std::log(u)); }, kLn2, b, rel_tol, 1e-300),
                   "source integral did not converge");
    // ln u changes sign at u = 1, so ask for an absolute tolerance tied to i0
    m.i1 = checked(integrate([s](double u) { const double lu = std::log(u); return lu * std::exp(u - s * lu); },
                             kLn2, b, rel_tol, rel_tol * m.i0),
                   "weighted source integral did not converge");
    return m;
}

double source_integral(double n, double x) {
    if (!(n > 2.0)) throw DomainError("logint", "source_integral: n must exceed 2");
    if (!(x >= 0.0)) throw DomainError("logint", "source_integral: x must be >= 0");
    const double b = std::log(n), s = x + 1.0;
    const double i0 =
        checked(integrate([s](double u) { return std::exp(u - s * std::log(u)); }, kLn2, b, kLiRelTol, 1e-300),
                "source integral did not converge");
    // Gamma(x+1) overflows long before the integral would
    return std::exp(log_gamma(s) + std::log(i0)) + li2();
}

double correction_factor(double n, double x) {
    if (!(n >= 11.0)) throw DomainError("logint", "correction_factor: n must be >= 11");
    if (!(x >= 1.0)) throw DomainError("logint", "correction_factor: x must be >= 1");
    // the bracketed sum itself, so that C(n;1) is exactly 1
    const double L = std::log(n), fx = std::floor(x);
    const int m = static_cast<int>(fx);
    double s = 0, c = 0, term = 1.0;
    for (int k = 0; k < m; ++k) {
        if (k > 0) term *= k / L;
        const double t = s + term;
        c += std::fabs(s) >= std::fabs(term) ? (s - t) + term : (term - t) + s;
        s = t;
    }
    double value = s + c;
    if (x > fx) value += (x - fx) * std::exp(log_gamma(fx + 1.0) - fx * std::log(L));
    return value;
}

double sigma_tilde(double n, double x) {
    if (!(n > 2.0)) throw DomainError("logint", "sigma_tilde: n must exceed 2");
    if (!(x >= 0.0)) throw DomainError("logint", "sigma_tilde: x must be >= 0");
    const double b = std::log(n), s = x + 1.0;
    const double i0 =
        checked(integrate([s](double u) { return std::exp(u - s * std::log(u)); }, kLn2, b, kLiRelTol, 1e-300),
                "sigma_tilde integral did not converge");
    return (li2() + i0) * std::exp(s * std::log(b) - b);
}

StieltjesPoint stieltjes_tau(double n) {
    if (!(n >= std::exp(4.0 / 3.0))) throw DomainError("logint", "stieltjes_tau: n must be >= e^(4/3)");
    return {n, std::log(n) - 1.0 / 3.0};
}

} // namespace litrunc
