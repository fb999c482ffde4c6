#pragma once

namespace litrunc {

inline constexpr double kLiRelTol = 1e-12;

// li(2), computed once as a principal value:
//   li(2) = Ei(ln 2) = int_0^{ln 2} 2 sinh(u)/u du - E1(ln 2)
double li2();

// li(n) = li(2) + int_2^n dt/ln t, n > 1.
double li(double n);
double li(double n, double rel_tol);

// The interpolated asymptotic expansion
//   li(n;x) = (n/L) sum_{k<floor x} k!/L^k + (x - floor x) floor(x)! n / L^{floor x + 1},  L = ln n
struct ExpansionEval {
    double n = 0;
    double x = 0;
    double value = 0;
    int head_terms = 0;
    double fractional_weight = 0;
};

ExpansionEval li_expansion(double n, double x);

// For 2 <= n < 11: the terms past k = 0 are subtracted instead of added,
// so the value falls below n/ln n and decreases in x.
double li_expansion_signed(double n, double x);

// Gamma(x+1) int_2^n dt/ln^{x+1} t + li(2), integrated in u = ln t.
double source_integral(double n, double x);

// C(n;x) = li(n;x) ln(n)/n
double correction_factor(double n, double x);

// (li(2) + int_2^n dt/ln^{x+1} t) / (n / ln^{x+1} n)
double sigma_tilde(double n, double x);

// int_{ln 2}^{ln n} e^u u^{-(x+1)} du and its ln u-weighted companion.
struct SourceMoments {
    double i0 = 0;  // plain
    double i1 = 0;  // weighted by ln u
};
SourceMoments source_moments(double n, double x, double rel_tol = kLiRelTol);

struct StieltjesPoint {
    double n = 0;
    double tau = 0;
};

// tau = ln n - 1/3, n >= e^{4/3}
StieltjesPoint stieltjes_tau(double n);

} // namespace litrunc
