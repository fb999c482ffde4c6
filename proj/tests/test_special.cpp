#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "litrunc/error.hpp"
#include "litrunc/special.hpp"

#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace litrunc;
using std::numbers::e;

TEST_CASE("W_{-1} at the branch point is exactly -1") {
    const auto w = lambert_w_m1(-1.0 / e);
    CHECK(w.w == -1.0);
    CHECK(std::fabs(w.residual) < 1e-16);
}

TEST_CASE("W_{-1}(-1/(2e))") {
    const auto w = lambert_w_m1(-0.5 / e);
    CHECK(w.w == doctest::Approx(-2.678346990016660653).epsilon(1e-14));
    CHECK(std::fabs(w.residual) <= 1e-14 * 0.5 / e);
}

TEST_CASE("W_{-1}(-0.1) against bisection") {
    double lo = -10, hi = -1;  // f(lo) > 0 > f(hi)
    auto f = [](double w) { return w * std::exp(w) + 0.1; };
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? lo : hi) = mid;
    }
    CHECK(lambert_w_m1(-0.1).w == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-13));
    CHECK(lambert_w_m1(-0.1).w == doctest::Approx(-3.577152063957297).epsilon(1e-14));
}

TEST_CASE("W_{-1} residual and branch on random t") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        // t spread over (-1/e, -e^{-69}] on a log scale, plus a band near the branch point
        const double t = i % 4 == 0 ? -1.0 / e * (1.0 - std::pow(10.0, -15 * u(rng)))
                                    : -std::exp(-1.0 - 68.0 * u(rng));
        const auto w = lambert_w_m1(t);
        REQUIRE(w.w <= -1.0);
        REQUIRE(std::fabs(w.residual) <= 1e-14 * std::fabs(t));
        REQUIRE(w.iterations <= 50);
        // within ~1e-15 of the branch point w is ill-conditioned in t; only the residual is comparable there
        if (i % 4 != 0) REQUIRE(w.w == doctest::Approx(boost::math::lambert_wm1(t)).epsilon(1e-12));
    }
}

TEST_CASE("W_{-1} decreases in t") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0 / e, 0.0);
    for (int i = 0; i < 1000; ++i) {
        double a = u(rng), b = u(rng);
        if (a == b || a == 0 || b == 0) continue;
        if (a > b) std::swap(a, b);
        CHECK(lambert_w_m1(a).w > lambert_w_m1(b).w);
    }
    CHECK(lambert_w_m1(-1e-300).w < -690);
}

TEST_CASE("W_{-1} domain") {
    CHECK_THROWS_AS(lambert_w_m1(0.0), DomainError);
    CHECK_THROWS_AS(lambert_w_m1(-0.4), DomainError);
    CHECK_THROWS_AS(lambert_w_m1(0.1), DomainError);
}

TEST_CASE("log_gamma values") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("log_gamma against std::lgamma") {
    // ln Gamma has zeros at 1 and 2, where relative error means nothing; there a 1e-14 absolute floor
    double worst_rel = 0;
    for (double x = 0.01; x < 400; x *= 1.0013) {
        const double ref = std::lgamma(x);
        const double err = std::fabs(log_gamma(x) - ref);
        REQUIRE(err <= std::max(1e-13 * std::fabs(ref), 1e-14));
        if (std::fabs(ref) > 0.1) worst_rel = std::max(worst_rel, err / std::fabs(ref));
    }
    CHECK(worst_rel < 1e-13);
}

TEST_CASE("factorial root ratio") {
    CHECK(std::fabs(factorial_root_ratio(5) - 0.521034) < 1e-6);
    CHECK(std::fabs(factorial_root_ratio(10) - 0.4528729) < 1e-6);
    CHECK(std::fabs(factorial_root_ratio(150) - 0.3763755) < 1e-6);
    CHECK(factorial_root_ratio(1) == doctest::Approx(1.0));
    double prev = 2;
    for (double x = 1; x <= 500; x += 0.25) {
        const double r = factorial_root_ratio(x);
        REQUIRE(r < prev);
        REQUIRE(r > 1.0 / e);
        REQUIRE(r <= 1.0 + 1e-15);
        prev = r;
    }
}

TEST_CASE("Robbins bounds") {
    const auto b1 = robbins_bounds(1);
    CHECK(b1.lower == doctest::Approx(0.99595).epsilon(1e-4));
    CHECK(b1.upper == doctest::Approx(1.00227).epsilon(1e-4));
    CHECK(b1.lower <= 1.0);
    CHECK(b1.upper >= 1.0);
    const auto b10 = robbins_bounds(10);
    CHECK(b10.lower <= 3628800.0);
    CHECK(b10.upper >= 3628800.0);
    double fact = 1;
    for (int z = 1; z <= 50; ++z) {
        fact *= z;
        const auto b = robbins_bounds(z);
        REQUIRE(b.lower <= fact * (1 + 1e-15));
        REQUIRE(fact <= b.upper * (1 + 1e-15));
        REQUIRE(b.lower <= std::exp(log_gamma(z + 1.0)));
        REQUIRE(std::exp(log_gamma(z + 1.0)) <= b.upper);
    }
    CHECK(std::fabs(e_plus() - 2.724464) < 1e-6);
    CHECK_THROWS_AS(robbins_bounds(0.5), DomainError);
}

TEST_CASE("linear exponential inversion") {
    const double n = 1e6, x = 3;
    const double y = std::pow(x / (e * std::log(n)), x);
    CHECK(std::fabs(solve_linear_exponential(y, n) - 3) < 1e-10);

    // round trip on the W_{-1} side of the map (x <= ln n)
    for (double nn = 1e2; nn <= 1e12; nn *= 10) {
        for (double xx = 1.5; xx <= 20; xx += 0.5) {
            if (xx > std::log(nn)) continue;
            const double ly = xx * std::log(xx / (e * std::log(nn)));
            REQUIRE(std::fabs(solve_linear_exponential_log(ly, nn) - xx) <= 1e-10 * xx);
        }
    }
}

TEST_CASE("linear exponential at the branch point gives x = -ln y") {
    const double n = 1e4;
    const double ly = -std::log(n);  // ln y / (e ln n) = -1/e
    CHECK(solve_linear_exponential_log(ly, n) == doctest::Approx(-ly).epsilon(1e-12));
    CHECK_THROWS_AS(solve_linear_exponential_log(1.01 * ly, n), DomainError);
    CHECK_THROWS_AS(solve_linear_exponential(1.5, n), DomainError);
}
