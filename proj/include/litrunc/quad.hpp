#pragma once

#include <functional>

namespace litrunc {

struct QuadResult {
    double value = 0;
    double abs_error = 0;
    int evaluations = 0;
    int intervals = 0;
    bool converged = false;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: the subinterval with the
// largest error estimate is bisected until
// sum(err) <= max(abs_tol, rel_tol * |sum(value)|) or max_intervals is hit.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     double abs_tol = 0.0, int max_intervals = 4000);

} // namespace litrunc
