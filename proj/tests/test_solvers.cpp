#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "litrunc/error.hpp"
#include "litrunc/logint.hpp"
#include "litrunc/solvers.hpp"
#include "litrunc/special.hpp"

#include <cmath>
#include <numbers>

using namespace litrunc;
using testutil::table;

TEST_CASE("exact truncation, quoted values") {
    const auto a = exact_truncation(599, table());
    CHECK(std::fabs(a.x - 2.15) <= 0.01);
    CHECK(a.method == Method::ExactPrime);
    CHECK(a.constraint_v == 109);
    const auto b = exact_truncation(88783, table());
    CHECK(std::fabs(b.x - 3.0) <= 0.01);
    CHECK(std::fabs(b.residual) <= 1e-9 * b.constraint_v);
}

TEST_CASE("exact truncation at 11 by substitution") {
    const auto s = exact_truncation(11, table());
    CHECK(s.constraint_v == 5);
    CHECK_FALSE(s.signed_regime);
    CHECK(s.x >= 1);
    CHECK(li_expansion(11, s.x).value == doctest::Approx(5).epsilon(1e-12));
}

TEST_CASE("forward verification on a grid") {
    for (double g : testutil::log_grid(11, 1e8, 400)) {
        const u64 n = static_cast<u64>(g);
        const auto s = exact_truncation(n, table());
        REQUIRE(s.x >= 1);
        REQUIRE(std::fabs(li_expansion(static_cast<double>(n), s.x).value - s.constraint_v) <= 1e-9 * s.constraint_v);
        REQUIRE(std::fabs(s.residual) <= 1e-9 * s.constraint_v);
    }
}

TEST_CASE("the exact bracket holds one sign change") {
    for (double g : testutil::log_grid(11, 1e8, 100)) {
        const u64 n = static_cast<u64>(g);
        const double nd = static_cast<double>(n);
        const double hi = stieltjes_tau(nd).tau + 10;
        CHECK(count_sign_changes(nd, static_cast<double>(table().pi(n)), 1.0, hi, 100) == 1);
    }
}

TEST_CASE("small n") {
    for (u64 n = 2; n < 11; ++n) {
        CAPTURE(n);
        const auto s = exact_truncation(n, table());
        CHECK(s.method == Method::ExactPrime);
        CHECK(s.x >= 1);
        const double nd = static_cast<double>(n);
        const double v = s.signed_regime ? li_expansion_signed(nd, s.x) : li_expansion(nd, s.x).value;
        CHECK(v == doctest::Approx(s.constraint_v).epsilon(1e-12));
    }
    CHECK(exact_truncation(4, table()).signed_regime);
    CHECK(exact_truncation(4, table()).x > 1);
    CHECK(exact_truncation(4, table()).x < 2);
    CHECK_THROWS_AS(exact_truncation(1, table()), DomainError);
}

TEST_CASE("average truncation: minimiser of the source integral") {
    // 30-digit minimisers of x -> Gamma(x+1) int_2^n dt/ln^{x+1} t + li(2)
    const struct { double n, x, min; } ref[] = {
        {6063, 2.67502558267672511, 30.4587416881998987},
        {88783, 3.33625532644129681, 68.0978262871352436},
        {1e6, 3.90393958786472015, 152.577115778708496},
    };
    for (const auto& r : ref) {
        CAPTURE(r.n);
        CHECK(source_integral_argmin(r.n) == doctest::Approx(r.x).epsilon(1e-9));
        const auto s = avg_truncation(static_cast<u64>(r.n), table());
        CHECK(s.x == doctest::Approx(r.x).epsilon(1e-9));
        CHECK(s.method == Method::AvgPrimeIntegral);
        CHECK_FALSE(s.exact_root);
        CHECK(s.constraint_v == doctest::Approx(prime_power_sum(static_cast<u64>(r.n), table()).value));
        CHECK(s.residual == doctest::Approx(r.min - s.constraint_v).epsilon(1e-9));
    }
}

TEST_CASE("average truncation meets the exact one at 88,783") {
    CHECK(std::fabs(avg_truncation(88783, table()).x - 3.0) <= 0.01);
}

TEST_CASE("average truncation near the exact one at 10^6") {
    const double g = exact_truncation(1'000'000, table()).x;
    const double gbar = avg_truncation(1'000'000, table()).x;
    CHECK(gbar > g - 0.6);
    CHECK(gbar < g + 0.6);
}

TEST_CASE("average truncation is smooth and increasing") {
    double prev = 0, prev_step = 0;
    const auto grid = testutil::log_grid(1e3, 1e6, 200);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = avg_truncation(static_cast<u64>(grid[i]), table()).x;
        if (i > 0) {
            REQUIRE(x > prev);
            // log-grid steps shrink smoothly, no jumps
            if (i > 1) REQUIRE(x - prev < 2 * prev_step);
            prev_step = x - prev;
        }
        prev = x;
    }
}

TEST_CASE("g and gbar cross in every decade of [10^3, 10^6]") {
    for (double lo = 1e3; lo < 1e6; lo *= 10) {
        int changes = 0;
        int sign = 0;
        for (double g : testutil::log_grid(lo, lo * 10, 200)) {
            const u64 n = static_cast<u64>(g);
            const double d = exact_truncation(n, table()).x - avg_truncation(n, table()).x;
            const int s = d > 0 ? 1 : -1;
            if (sign != 0 && s != sign) ++changes;
            sign = s;
        }
        CAPTURE(lo);
        CHECK(changes >= 1);
    }
}

TEST_CASE("asymptotic closed form") {
    const auto s9 = avg_truncation_asymptotic(9, table());
    CHECK(std::isfinite(s9.x));
    CHECK(s9.x > 0);
    CHECK(s9.method == Method::ClosedFormW);
    CHECK(s9.residual == 0);
    for (u64 n = 4; n <= 8; ++n) CHECK_THROWS_AS(avg_truncation_asymptotic(n, table()), DomainError);

    const double a = avg_truncation_asymptotic(1'000'000, table()).x;
    const double g = avg_truncation(1'000'000, table()).x;
    CHECK(std::fabs(a - g) <= 0.15 * g);

    // consistent with the linear-exponential inversion at y = D
    const double d = density(1'000'000, table()).d;
    CHECK(a == doctest::Approx(solve_linear_exponential(d, 1e6)).epsilon(1e-14));
}

TEST_CASE("closed form at or above the integral form from 10^6") {
    for (double g : testutil::log_grid(1e6, 1e9, 40)) {
        const u64 n = static_cast<u64>(g);
        CHECK(avg_truncation_asymptotic(n, table()).x >= avg_truncation(n, table()).x);
    }
}

TEST_CASE("closed form within the exact truncation's range near 10^12") {
    double lo = 1e9, hi = 0;
    for (double g : testutil::log_grid(1e12, 1.1e12, 25)) {
        const double x = exact_truncation(static_cast<u64>(g), table()).x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double a = avg_truncation_asymptotic(1'000'000'000'000ULL, table()).x;
    CAPTURE(lo);
    CAPTURE(hi);
    CHECK(a >= lo);
    CHECK(a <= hi);
}

TEST_CASE("first-order form") {
    const auto s4 = avg_truncation_first_order(10'000, table());
    CHECK(std::isfinite(s4.x));
    CHECK(s4.x > 0);
    CHECK(s4.method == Method::AvgPrimeAsymptotic);
    const double b = beta_n(10'000);
    const double L = std::log(1e4);
    CHECK(s4.x == doctest::Approx(((b - 1) * L - std::log(L)) / lambert_w_m1((b - 1) / std::numbers::e).w));

    const u64 n = 100'000'000;
    const double first = avg_truncation_first_order(n, table()).x;
    const double simple = limit_form(1e8, LimitVariant::Simple).x;
    const double closed = avg_truncation_asymptotic(n, table()).x;
    CHECK(first > std::min(simple, closed));
    CHECK(first < std::max(simple, closed));

    // beta = 1/2 reproduces the limit algebra: (-L/2 - ln L) / W(-1/(2e)) = c L + 2c ln L
    for (double nn : {1e10, 1e50, 1e200}) {
        const double x = avg_truncation_first_order_for(nn, 0.5).x;
        CHECK(x == doctest::Approx(limit_form(nn, LimitVariant::LogLog).x).epsilon(1e-13));
    }
    CHECK_THROWS_AS(avg_truncation_first_order_for(1e6, 1.0), DomainError);
}

TEST_CASE("limit constant") {
    CHECK(limit_constant() == doctest::Approx(0.18668230885083704).epsilon(1e-13));
    CHECK(std::fabs(limit_constant() - 1 / 5.356694) < 1e-6);
    CHECK(std::fabs(limit_constant() - 0.186682) < 1e-5);
    CHECK(std::fabs(2 * limit_constant() - 0.373365) <= 1e-6);
    const auto s = limit_form(1e6, LimitVariant::Simple);
    CHECK(s.x == doctest::Approx(limit_constant() * std::log(1e6)));
    CHECK(s.method == Method::LimitSimple);
    CHECK(s.residual == 0);
    const auto l = limit_form(1e6, LimitVariant::LogLog);
    CHECK(l.method == Method::LimitLogLog);
    CHECK(l.x == doctest::Approx(limit_constant() * (std::log(1e6) + 2 * std::log(std::log(1e6)))));
    CHECK_THROWS_AS(limit_form(2.7, LimitVariant::Simple), DomainError);
}

TEST_CASE("simple limit is a little under a fifth of tau") {
    for (double n : testutil::log_grid(1e6, 1e12, 200)) {
        const double r = limit_form(n, LimitVariant::Simple).x / stieltjes_tau(n).tau;
        REQUIRE(r > 0.17);
        REQUIRE(r < 0.21);
    }
}

TEST_CASE("limit forms against the closed form at 10^100") {
    // density modelled as n^(1/2) / (n ln n): the limit forms approach the closed form only
    // as ln ln n / ln n -> 0, so at 10^100 the simple one is still 7% short
    auto ratio = [](double n, LimitVariant v) {
        const double L = std::log(n);
        const double d = std::exp(-0.5 * L - std::log(L));
        return limit_form(n, v).x / avg_truncation_asymptotic_for(n, d).x;
    };
    CHECK(ratio(1e100, LimitVariant::Simple) == doctest::Approx(0.926).epsilon(2e-3));
    CHECK(std::fabs(ratio(1e100, LimitVariant::LogLog) - 1) < 0.05);
    double prev = 0;
    for (double e10 : {10.0, 30.0, 100.0, 300.0}) {
        const double r = ratio(std::pow(10.0, e10), LimitVariant::Simple);
        CHECK(r > prev);
        CHECK(r < 1);
        prev = r;
    }
}
