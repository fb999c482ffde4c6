#pragma once

namespace litrunc {

// Lower real branch of the Lambert W function, with its certified residual.
struct WEval {
    double t = 0;
    double w = 0;         // w <= -1
    double residual = 0;  // w*e^w - t
    int iterations = 0;
};

WEval lambert_w_m1(double t);

// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms).
double log_gamma(double x);

// (x!)^(1/x) / x, decreasing from 1 at x = 1 towards 1/e.
double factorial_root_ratio(double x);

// Robbins' two-sided Stirling bounds on z!.
struct RobbinsBounds {
    double lower;
    double upper;
};
RobbinsBounds robbins_bounds(double z);
RobbinsBounds robbins_log_bounds(double z);  // the same, as logarithms

// sqrt(2 pi) e^(1/12): Robbins' upper constant, slightly above e.
double e_plus();

// Solve y = (x / (e ln n))^x for x on the W_{-1} branch (x <= ln n).
double solve_linear_exponential(double y, double n);
double solve_linear_exponential_log(double log_y, double n);

} // namespace litrunc
