#include "litrunc/bounds.hpp"
#include "litrunc/error.hpp"
#include "litrunc/quad.hpp"
#include "litrunc/solvers.hpp"
#include "litrunc/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace litrunc {

const std::vector<DusartRow>& dusart_table() {
    static const std::vector<DusartRow> rows{
        {0, 1.0, 1},
        {1, 1.2323, 2},   {1, 0.001, 908'994'923},
        {2, 3.965, 2},    {2, 0.2, 3'594'641},   {2, 0.05, 122'568'683}, {2, 0.01, 7'713'133'853},
        {3, 20.83, 2},    {3, 10.0, 32'321},     {3, 1.0, 89'967'803},   {3, 0.78, 158'822'621},
        {4, 1300.0, 2},
    };
    return rows;
}

double truncation_constant_integral() {
    static const double v = [] {
        // t = e^u; integrate to t = 1e12 and close with the tail
        // int_T^inf dt/(t^3 ln t) ~ 1/(2 T^2 ln T)
        const double T = 1e12, U = std::log(T);
        const auto q = integrate([](double u) { return 1.0 / (std::expm1(2.0 * u) * u); }, std::numbers::ln2, U,
                                 1e-14, 1e-300);
        if (!q.converged) throw QuadratureError("bounds", "truncation constant integral", q.abs_error);
        return q.value + 1.0 / (2.0 * T * T * U);
    }();
    return v;
}

double truncation_constant() { return std::numbers::ln2 - truncation_constant_integral(); }

namespace {

double truncation_bound_unchecked(double n, double x) {
    const double L = std::log(n), LL = std::log(L);
    return std::exp(L - LL + log_gamma(x) - (x - 1.0) * LL) - truncation_constant();
}

} // namespace

double truncation_bound(double n, double x) {
    if (!(n >= 2)) throw DomainError("bounds", "truncation_bound: n must be >= 2");
    if (!(x >= 1)) throw DomainError("bounds", "truncation_bound: x must be >= 1");
    return truncation_bound_unchecked(n, x);
}

double schoenfeld_leading(double n) { return std::sqrt(n) * std::log(n) / (8.0 * std::numbers::pi); }

double f2(u64 n, const PrimeTable& table) {
    if (n < 2) throw DomainError("bounds", "f2: n must be >= 2");
    return schoenfeld_leading(static_cast<double>(n)) + prime_power_sum(n, table).value + truncation_constant();
}

double schoenfeld_b_bound(u64 n, const PrimeTable& table) {
    if (n < 2657) throw DomainError("bounds", "schoenfeld_b_bound: only valid for n >= 2657");
    return f2(n, table);
}

EnvelopeConstants envelope_constants() {
    EnvelopeConstants k;
    // printed to 7 digits in the source; derived here from W_{-1}
    k.c = limit_constant();
    k.a = e_plus() * std::numbers::e / std::sqrt(k.c);
    k.b = std::pow(k.c, k.c);
    k.ln_b = k.c * std::log(k.c);
    k.log_8pi_a = std::log(8.0 * std::numbers::pi * k.a);
    return k;
}

double f1(double n) {
    if (!(n >= 2)) throw DomainError("bounds", "f1: n must be >= 2");
    // for n < e^{1/c} the argument of Gamma drops below 1; the formula still holds
    return truncation_bound_unchecked(n, limit_constant() * std::log(n));
}

double f1_envelope(double n) {
    if (!(n >= 2)) throw DomainError("bounds", "f1_envelope: n must be >= 2");
    const auto k = envelope_constants();
    const double L = std::log(n);
    return std::exp((1.0 - k.c) * L + std::log(k.a) + k.ln_b * L - 0.5 * std::log(L)) - truncation_constant();
}

double simplified_crossing_analytic() { return std::exp(std::exp(envelope_constants().log_8pi_a / 1.5)); }

const char* pair_name(CrossingPair p) {
    switch (p) {
    case CrossingPair::F1VsF2: return "F1VsF2";
    case CrossingPair::TruncAvgVsSchoenfeld: return "TruncAvgVsSchoenfeld";
    case CrossingPair::TruncLogLogVsSchoenfeld: return "TruncLogLogVsSchoenfeld";
    }
    return "?";
}

const char* form_name(BoundForm f) {
    switch (f) {
    case BoundForm::Simple: return "Simple";
    case BoundForm::LogLog: return "LogLog";
    case BoundForm::ExactAvg: return "ExactAvg";
    }
    return "?";
}

u64 form_threshold(BoundForm f) {
    switch (f) {
    case BoundForm::Simple: return 1'500'000'000'000ULL;
    case BoundForm::LogLog: return 33'520;
    case BoundForm::ExactAvg: return 6'063;
    }
    return 0;
}

double form_truncation(BoundForm f, u64 n, const PrimeTable& table) {
    const double nd = static_cast<double>(n);
    switch (f) {
    case BoundForm::Simple: return limit_form(nd, LimitVariant::Simple).x;
    case BoundForm::LogLog: return limit_form(nd, LimitVariant::LogLog).x;
    case BoundForm::ExactAvg: return avg_truncation(n, table).x;
    }
    return 0;
}

bool verify_double_bound(u64 n, BoundForm f, const PrimeTable& table) {
    if (n < form_threshold(f))
        throw DomainError("bounds", std::string("verify_double_bound: ") + form_name(f) + " is only claimed for n >= " +
                                        std::to_string(form_threshold(f)));
    return truncation_bound(static_cast<double>(n), form_truncation(f, n, table)) < schoenfeld_b_bound(n, table);
}

double crossing_difference(CrossingPair pair, u64 n, const PrimeTable& table) {
    const double nd = static_cast<double>(n);
    switch (pair) {
    case CrossingPair::F1VsF2:
        return f1(nd) - f2(n, table);
    case CrossingPair::TruncAvgVsSchoenfeld:
        return truncation_bound_unchecked(nd, avg_truncation(n, table).x) - f2(n, table);
    case CrossingPair::TruncLogLogVsSchoenfeld:
        return truncation_bound_unchecked(nd, limit_form(nd, LimitVariant::LogLog).x) - f2(n, table);
    }
    return 0;
}

CrossingReport find_crossing(CrossingPair pair, double lo, double hi, const PrimeTable& table, int grid) {
    const u64 a = static_cast<u64>(std::ceil(std::max(lo, pair == CrossingPair::TruncAvgVsSchoenfeld ? 4.0 : 3.0)));
    const u64 b = static_cast<u64>(std::floor(hi));
    if (b <= a) throw DomainError("bounds", "find_crossing: empty search range");

    std::vector<u64> pts;
    for (int k = 0; k <= grid; ++k) {
        const double t = std::log(double(a)) + (std::log(double(b)) - std::log(double(a))) * k / grid;
        pts.push_back(std::clamp<u64>(static_cast<u64>(std::llround(std::exp(t))), a, b));
    }
    pts.front() = a;
    pts.back() = b;
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto d = [&](u64 n) { return crossing_difference(pair, n, table); };
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = d(pts[i]);

    CrossingReport rep;
    rep.pair = pair;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if ((vals[i - 1] > 0) == (vals[i] > 0)) continue;
        u64 l = pts[i - 1], h = pts[i];
        double dl = vals[i - 1], dh = vals[i];
        while (h - l > 1) {
            const u64 m = l + (h - l) / 2;
            const double dm = d(m);
            if ((dm > 0) == (dl > 0)) {
                l = m;
                dl = dm;
            } else {
                h = m;
                dh = dm;
            }
        }
        const double frac = dl == dh ? 0.5 : dl / (dl - dh);
        rep.all.push_back({static_cast<double>(l) + frac, l, h, dl, dh});
    }
    if (rep.all.empty())
        throw NoRootError("bounds", std::string("find_crossing: no sign change for ") + pair_name(pair),
                          double(a), vals.front(), double(b), vals.back());
    rep.n = rep.all.back().n;
    return rep;
}

BoundSeries bound_series(const std::vector<u64>& grid, const PrimeTable& table) {
    BoundSeries s;
    s.grid = grid;
    for (u64 n : grid) {
        const double nd = static_cast<double>(n);
        s.truncation_bound.push_back(n >= 4 ? truncation_bound_unchecked(nd, avg_truncation(n, table).x) : NAN);
        s.f2.push_back(f2(n, table));
        s.schoenfeld_b.push_back(s.f2.back());
        s.f1.push_back(f1(nd));
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        auto flip = [&](const std::vector<double>& u, const std::vector<double>& v) {
            const double d0 = u[i - 1] - v[i - 1], d1 = u[i] - v[i];
            return std::isfinite(d0) && std::isfinite(d1) && (d0 > 0) != (d1 > 0);
        };
        const double mid = 0.5 * (double(grid[i - 1]) + double(grid[i]));
        if (flip(s.f1, s.f2)) s.crossings.emplace_back(mid, "F1VsF2");
        if (flip(s.truncation_bound, s.schoenfeld_b)) s.crossings.emplace_back(mid, "TruncAvgVsSchoenfeld");
    }
    return s;
}

} // namespace litrunc
