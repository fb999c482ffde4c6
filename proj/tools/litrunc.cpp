// litrunc: truncated expansions of li(n), prime truncation solvers and bound comparisons.

#include "litrunc/bounds.hpp"
#include "litrunc/error.hpp"
#include "litrunc/kernels.hpp"
#include "litrunc/logint.hpp"
#include "litrunc/primes.hpp"
#include "litrunc/riemann.hpp"
#include "litrunc/solvers.hpp"
#include "litrunc/special.hpp"
#include "litrunc/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace litrunc;

namespace {

struct Config {
    std::string cache;
    std::string fixture;
    std::string max_n;
    std::string small_limit = "10^8";
    bool allow_slow = false;
    unsigned jobs = 0;
};

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

PrimeTable::Options table_options(const Config& cfg, bool allow_slow) {
    PrimeTable::Options o;
    o.cache_path = cfg.cache.empty() ? env_or("LITRUNC_CACHE", "") : cfg.cache;
    const std::string max_n = cfg.max_n.empty() ? env_or("LITRUNC_MAX_N", "") : cfg.max_n;
    if (!max_n.empty()) o.max_n = parse_count(max_n);
    o.small_limit = parse_count(cfg.small_limit);
    if (!cfg.fixture.empty()) {
        if (!std::filesystem::exists(cfg.fixture)) throw IoError("cli", "fixture not found: " + cfg.fixture);
        o.fixture_path = cfg.fixture;
    }
    o.allow_slow = allow_slow || cfg.allow_slow;
    o.progress = [](const std::string& msg) { std::cerr << "litrunc: " << msg << "...\n"; };
    return o;
}

std::string today() {
    std::time_t t = std::time(nullptr);
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::stoll(sde));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
    return buf;
}

std::string fmt(double v, int digits = 12) { return format_number(v, digits); }

// 10^k or plain decimal, possibly beyond 64 bits
u128 parse_wide(const std::string& s) {
    if (s.rfind("10^", 0) == 0) {
        u128 v = 1;
        const int k = std::stoi(s.substr(3));
        if (k < 0 || k > 38) throw DomainError("cli", "exponent out of range: " + s);
        for (int i = 0; i < k; ++i) v *= 10;
        return v;
    }
    return parse_count(s);
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    for (; v; v /= 10) s.insert(s.begin(), char('0' + int(v % 10)));
    return s;
}

double parse_real(const std::string& s) {
    if (s.rfind("10^", 0) == 0) return std::pow(10.0, std::stod(s.substr(3)));
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw DomainError("cli", "cannot parse number: " + s);
    return v;
}

void print_solution(const TruncationSolution& s) {
    std::cout << fmt(s.x) << '\n'
              << "# method: " << method_name(s.method) << '\n'
              << "# constraint: " << fmt(s.constraint_v) << '\n'
              << "# residual: " << fmt(s.residual) << '\n';
    if (s.signed_regime) std::cout << "# signed_regime: true\n";
    if (!s.exact_root) std::cout << "# exact_root: false (no root; x minimises the residual)\n";
}

int cmd_value(const std::string& q, const std::string& n_text, const std::string& x_text, const std::string& form,
              int terms, const Config& cfg) {
    static const std::vector<std::string> real_valued{"li", "Rn", "f1", "g_limit", "tau"};
    if (std::find(real_valued.begin(), real_valued.end(), q) != real_valued.end()) {
        const double n = parse_real(n_text);
        if (q == "li") std::cout << fmt(li(n)) << '\n';
        else if (q == "Rn") std::cout << fmt(riemann_r(n, terms)) << '\n';
        else if (q == "f1") std::cout << fmt(f1(n)) << '\n';
        else if (q == "tau") std::cout << fmt(stieltjes_tau(n).tau) << '\n';
        else print_solution(limit_form(n, form == "loglog" ? LimitVariant::LogLog : LimitVariant::Simple));
        return 0;
    }

    PrimeTable table(table_options(cfg, false));
    if (q == "pi") {
        const u128 w = parse_wide(n_text);
        if (w > u128(table.options().max_n) && n_text.rfind("10^", 0) == 0) {
            if (auto c = table.checkpoint(std::stoi(n_text.substr(3)))) {
                std::cout << c->decimal << "\n# source: " << c->source << " (fixture)\n";
                return 0;
            }
        }
        if (w > u128(~u64{0})) throw ResourceError("cli", "pi(" + n_text + ") is neither computable nor in the fixture");
        std::cout << table.pi(static_cast<u64>(w)) << '\n';
        return 0;
    }

    const u64 n = parse_count(n_text);
    if (q == "g_exact") print_solution(exact_truncation(n, table));
    else if (q == "g_avg") print_solution(avg_truncation(n, table));
    else if (q == "g_asym") print_solution(avg_truncation_asymptotic(n, table));
    else if (q == "g_first") print_solution(avg_truncation_first_order(n, table));
    else if (q == "f2") std::cout << fmt(f2(n, table)) << '\n';
    else if (q == "schoenfeld_b") std::cout << fmt(schoenfeld_b_bound(n, table)) << '\n';
    else if (q == "density") std::cout << fmt(density(n, table).d) << '\n';
    else if (q == "beta") std::cout << fmt(beta_n(n)) << '\n';
    else if (q == "li_trunc") {
        const double x = x_text.empty() ? avg_truncation(n, table).x : parse_real(x_text);
        const auto e = li_expansion(double(n), x);
        std::cout << fmt(e.value) << "\n# x: " << fmt(x) << "\n# head_terms: " << e.head_terms
                  << "\n# fractional_weight: " << fmt(e.fractional_weight) << '\n';
    } else if (q == "trunc_bound") {
        double x;
        if (!x_text.empty()) x = parse_real(x_text);
        else if (form == "simple") x = limit_form(double(n), LimitVariant::Simple).x;
        else if (form == "loglog") x = limit_form(double(n), LimitVariant::LogLog).x;
        else x = avg_truncation(n, table).x;
        std::cout << fmt(truncation_bound(double(n), x)) << "\n# x: " << fmt(x) << '\n';
    } else if (is_known_column(q)) {
        PointContext ctx(n, table);
        std::cout << fmt(evaluate(q, ctx)) << '\n';
    } else {
        throw DomainError("cli", "unknown quantity '" + q + "'");
    }
    return 0;
}

int cmd_compare_pi(const std::string& n_text, const Config& cfg) {
    PrimeTable table(table_options(cfg, false));
    const u128 n = parse_wide(n_text);
    const double nd = static_cast<double>(static_cast<long double>(n));
    if (n < 2) throw DomainError("cli", "compare-pi: n must be >= 2");

    long double pi_n = -1;
    std::string pi_text, pi_source = "computed";
    if (n_text.rfind("10^", 0) == 0)
        if (auto c = table.checkpoint(std::stoi(n_text.substr(3)))) {
            pi_n = c->value;
            pi_text = c->decimal;
            pi_source = c->source + " (fixture)";
        }
    if (pi_n < 0) {
        if (n > u128(~u64{0})) {
            std::cerr << "litrunc: warning: pi(" << n_text << ") unavailable; reporting approximations only\n";
        } else {
            try {
                const u64 v = table.pi(static_cast<u64>(n));
                pi_n = v;
                pi_text = std::to_string(v);
            } catch (const ResourceError& e) {
                std::cerr << "litrunc: warning: " << e.what() << "; reporting approximations only\n";
            }
        }
    }

    const double pps = prime_power_sum_wide(n, table).value;
    const double lin = li(nd), rn = riemann_r(nd);
    // gbar needs n >= 4, and li(n;x) needs x >= 1; small n just report why
    std::optional<TruncationSolution> g;
    std::optional<double> lig;
    std::string why;
    try {
        g = avg_truncation_for(nd, pps);
        lig = li_expansion(nd, g->x).value;
    } catch (const DomainError& e) {
        why = e.what();
    }

    auto rel = [&](double approx) -> std::string {
        if (pi_n < 0) return "";
        const long double e = (static_cast<long double>(approx) - pi_n) / pi_n;
        std::ostringstream os;
        os << std::setprecision(3) << std::scientific << static_cast<double>(e * 100) << " %";
        return os.str();
    };
    std::cout << "n          " << to_string(n) << '\n'
              << "pi(n)      " << (pi_text.empty() ? "(unavailable)" : pi_text) << "  [" << pi_source << "]\n"
              << "li(n)      " << fmt(lin, 15) << "  rel.err " << rel(lin) << '\n'
              << "R(n)       " << fmt(rn, 15) << "  rel.err " << rel(rn) << '\n'
              << "li(n;gbar) ";
    if (lig)
        std::cout << fmt(*lig, 15) << "  rel.err " << rel(*lig) << "  (gbar = " << fmt(g->x)
                  << (g->exact_root ? "" : ", closest approach") << ")\n";
    else
        std::cout << "n/a  (" << why << ")\n";
    return 0;
}

int cmd_sweep(SweepSpec spec, const std::string& out_path, const Config& cfg, const std::vector<std::string>& argv) {
    PrimeTable table(table_options(cfg, spec.allow_slow));
    auto r = run_sweep(spec, table, cfg.jobs);
    for (const auto& w : r.warnings) std::cerr << "litrunc: warning: " << w << '\n';
    if (spec.budget_seconds > 0 && r.seconds > spec.budget_seconds)
        std::cerr << "litrunc: warning: sweep took " << fmt(r.seconds, 4) << " s, over its budget of "
                  << spec.budget_seconds << " s\n";

    std::string cmdline = "litrunc";
    for (std::size_t i = 1; i < argv.size(); ++i) cmdline += " " + argv[i];
    std::vector<std::string> comments{"litrunc " LITRUNC_VERSION, "command: " + cmdline, "date: " + today()};
    if (!spec.caption.empty()) comments.insert(comments.begin() + 1, "figure: " + spec.caption);

    if (out_path.empty() || out_path == "-") {
        write_csv(std::cout, r, comments);
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cli", "cannot write " + out_path);
        write_csv(out, r, comments);
        if (!out) throw IoError("cli", "write failed: " + out_path);
    }
    return 0;
}

int cmd_crossing(const std::string& pair_text, const std::string& lo_text, const std::string& hi_text, int grid,
                 const Config& cfg) {
    CrossingPair pair;
    double lo, hi;
    if (pair_text == "F1VsF2") pair = CrossingPair::F1VsF2, lo = 1e11, hi = 1e13;
    else if (pair_text == "TruncAvgVsSchoenfeld") pair = CrossingPair::TruncAvgVsSchoenfeld, lo = 2657, hi = 1e5;
    else if (pair_text == "TruncLogLogVsSchoenfeld") pair = CrossingPair::TruncLogLogVsSchoenfeld, lo = 2657, hi = 1e6;
    else throw DomainError("cli", "unknown pair '" + pair_text + "'");
    if (!lo_text.empty()) lo = parse_real(lo_text);
    if (!hi_text.empty()) hi = parse_real(hi_text);

    PrimeTable table(table_options(cfg, false));
    const auto rep = find_crossing(pair, lo, hi, table, grid);
    std::cout << fmt(rep.n, 10) << '\n';
    for (const auto& c : rep.all)
        std::cout << "# sign change between " << c.lo << " and " << c.hi << " (" << fmt(c.d_lo, 6) << " -> "
                  << fmt(c.d_hi, 6) << "), interpolated " << fmt(c.n, 10) << '\n';
    return 0;
}

// Invariant suites on random samples; one line per suite.
int cmd_verify(unsigned seed, int grid, const std::string& only, const Config& cfg) {
    PrimeTable table(table_options(cfg, false));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_sample = [&](double a, double b) { return std::exp(std::log(a) + (std::log(b) - std::log(a)) * unit(rng)); };

    struct Suite {
        const char* name;
        std::function<std::string()> run;  // empty string: pass
    };
    std::vector<Suite> suites{
        {"pi-monotone",
         [&]() -> std::string {
             u64 prev_n = 0, prev = 0;
             std::vector<u64> ns;
             for (int i = 0; i < grid; ++i) ns.push_back(static_cast<u64>(log_sample(2, 1e8)));
             std::sort(ns.begin(), ns.end());
             for (u64 n : ns) {
                 const u64 v = table.pi(n);
                 if (v < prev) return "pi(" + std::to_string(n) + ") < pi(" + std::to_string(prev_n) + ")";
                 prev = v, prev_n = n;
             }
             return "";
         }},
        {"stieltjes-envelope",
         [&]() -> std::string {
             for (int i = 0; i < grid; ++i) {
                 const double n = log_sample(4, 1e9), L = std::log(n);
                 const double e = std::fabs(li(n) - li_expansion(n, stieltjes_tau(n).tau).value);
                 if (!(e < 0.5 / (L * L))) return "violated at n=" + fmt(n);
             }
             return "";
         }},
        {"expansion-monotone",
         [&]() -> std::string {
             for (int i = 0; i < grid; ++i) {
                 const double n = log_sample(11, 1e8), tau = stieltjes_tau(n).tau;
                 const double x = 1 + (tau - 1) * unit(rng);
                 if (li_expansion(n, x + 1e-6).value < li_expansion(n, x).value)
                     return "decrease at n=" + fmt(n) + " x=" + fmt(x);
             }
             return "";
         }},
        {"lambert-residual",
         [&]() -> std::string {
             for (int i = 0; i < grid; ++i) {
                 const double t = -std::exp(-1.0 - 68.0 * unit(rng));
                 const auto w = lambert_w_m1(t);
                 if (!(std::fabs(w.residual) <= 1e-14 * std::fabs(t)) || w.w > -1)
                     return "t=" + fmt(t) + " residual " + fmt(w.residual);
             }
             return "";
         }},
        {"dusart-rows",
         [&]() -> std::string {
             std::vector<u64> ns;
             for (int i = 0; i < grid; ++i) ns.push_back(static_cast<u64>(log_sample(2, double(table.small_limit()))));
             std::sort(ns.begin(), ns.end());
             const auto th = table.theta_batch(ns);
             for (const auto& row : dusart_table()) {
                 if (row.n_k > table.small_limit()) continue;
                 for (std::size_t i = 0; i < ns.size(); ++i) {
                     if (ns[i] < row.n_k) continue;
                     const double n = double(ns[i]);
                     if (!(std::fabs(th[i] - n) < row.eta * n / std::pow(std::log(n), row.k)))
                         return "k=" + std::to_string(row.k) + " eta=" + fmt(row.eta) + " at n=" + std::to_string(ns[i]);
                 }
             }
             return "";
         }},
        {"robbins",
         [&]() -> std::string {
             for (int z = 1; z <= 50; ++z) {
                 const auto b = robbins_log_bounds(z);
                 const double lg = log_gamma(z + 1.0);
                 if (!(b.lower <= lg && lg <= b.upper)) return "z=" + std::to_string(z);
             }
             return "";
         }},
    };

    int failed = 0;
    for (const auto& s : suites) {
        if (!only.empty() && only != s.name) continue;
        const std::string err = s.run();
        std::cout << (err.empty() ? "PASS " : "FAIL ") << s.name << (err.empty() ? "" : ": " + err) << '\n';
        failed += !err.empty();
    }
    return failed ? 1 : 0;
}

int cmd_cache(const std::string& action, const Config& cfg) {
    PrimeTable table(table_options(cfg, false));
    const auto& path = table.options().cache_path;
    if (path.empty()) throw IoError("cli", "no cache file configured (--cache or LITRUNC_CACHE)");
    if (action == "inspect") {
        const auto snap = table.cache_snapshot();
        std::cout << "cache: " << path << "\nentries: " << snap.size() << '\n';
        if (!snap.empty())
            std::cout << "range: " << snap.begin()->first << " .. " << snap.rbegin()->first << '\n';
    } else if (action == "validate") {
        // load already cross-checks m <= small_limit; repeat to report explicitly
        const auto bad = table.validate_cache();
        std::cout << (bad.empty() ? "ok" : "mismatches: " + std::to_string(bad.size())) << '\n';
        return bad.empty() ? 0 : 3;
    } else if (action == "compact") {
        table.compact_cache();
        std::cout << "rewrote " << table.cache_size() << " entries\n";
    } else {
        throw DomainError("cli", "unknown cache action '" + action + "' (inspect, validate, compact)");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"Truncated asymptotic expansions of li(n), prime truncation solvers and bound comparisons"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "litrunc " LITRUNC_VERSION);

    Config cfg;
    app.add_option("--cache", cfg.cache, "pi cache file (env LITRUNC_CACHE)");
    app.add_option("--max-n", cfg.max_n, "largest m for which pi(m) is computed (env LITRUNC_MAX_N, default 10^13)");
    app.add_option("--small-limit", cfg.small_limit, "sieve coverage (default 10^8)");
    app.add_option("--fixture", cfg.fixture, "pi(10^k) checkpoint file");
    app.add_flag("--allow-slow", cfg.allow_slow, "permit pi(m) for m > 10^10");
    app.add_option("-j,--jobs", cfg.jobs, "sweep worker threads (default: logical CPUs)");

    std::string quantity, n_text, x_text, form = "avg", out_path, figure, lo_text, hi_text, spacing = "log", columns,
                                        pair, suite, action;
    int terms = 5, points = 100, grid = 4000, vgrid = 1000;
    unsigned seed = 1;

    auto* value = app.add_subcommand("value", "evaluate one quantity at n");
    value->add_option("quantity", quantity, "pi li li_trunc g_exact g_avg g_asym g_first g_limit Rn f1 f2 "
                                            "trunc_bound schoenfeld_b density beta, or any sweep column")
        ->required();
    value->add_option("--n", n_text, "argument (1000000, 1e6, 10^6)")->required();
    value->add_option("--x", x_text, "truncation point for li_trunc / trunc_bound");
    value->add_option("--form", form, "simple | loglog | avg (g_limit, trunc_bound)");
    value->add_option("--terms", terms, "nonzero Moebius terms for Rn");

    auto* sweep = app.add_subcommand("sweep", "tabulate columns over a grid as CSV");
    sweep->add_option("--figure", figure, "declarative figure spec (JSON)");
    sweep->add_option("--lo", lo_text);
    sweep->add_option("--hi", hi_text);
    sweep->add_option("--points", points);
    sweep->add_option("--spacing", spacing, "linear | log | every");
    sweep->add_option("--columns", columns, "comma-separated column ids");
    sweep->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* compare = app.add_subcommand("compare-pi", "pi(n) against li, R and li(n;gbar)");
    compare->add_option("--n", n_text)->required();

    auto* crossing = app.add_subcommand("crossing", "locate where a truncation bound meets its comparison bound");
    crossing->add_option("--pair", pair, "F1VsF2 | TruncAvgVsSchoenfeld | TruncLogLogVsSchoenfeld")->required();
    crossing->add_option("--lo", lo_text);
    crossing->add_option("--hi", hi_text);
    crossing->add_option("--grid", grid, "log-grid size before refinement");

    auto* verify = app.add_subcommand("verify", "run invariant suites on random samples");
    verify->add_option("--seed", seed);
    verify->add_option("--grid", vgrid, "samples per suite");
    verify->add_option("--suite", suite);

    auto* cache = app.add_subcommand("cache", "inspect, validate or compact the pi cache");
    cache->add_option("action", action, "inspect | validate | compact")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*value) return cmd_value(quantity, n_text, x_text, form, terms, cfg);
        if (*compare) return cmd_compare_pi(n_text, cfg);
        if (*crossing) return cmd_crossing(pair, lo_text, hi_text, grid, cfg);
        if (*verify) return cmd_verify(seed, vgrid, suite, cfg);
        if (*cache) return cmd_cache(action, cfg);
        if (*sweep) {
            SweepSpec spec;
            if (!figure.empty()) {
                spec = load_sweep_spec(figure);
            } else {
                if (lo_text.empty() || hi_text.empty() || columns.empty())
                    throw DomainError("cli", "sweep needs --figure or --lo/--hi/--columns");
                spec.lo = parse_count(lo_text);
                spec.hi = parse_count(hi_text);
                spec.points = points;
                spec.spacing = parse_spacing(spacing);
                std::stringstream ss(columns);
                for (std::string c; std::getline(ss, c, ',');) spec.columns.push_back(c);
                validate(spec);
            }
            return cmd_sweep(spec, out_path, cfg, args);
        }
    } catch (const Error& e) {
        std::cerr << "litrunc: error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "litrunc: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
