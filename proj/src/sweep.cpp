#include "litrunc/sweep.hpp"
#include "litrunc/bounds.hpp"
#include "litrunc/error.hpp"
#include "litrunc/logint.hpp"
#include "litrunc/riemann.hpp"
#include "litrunc/solvers.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace litrunc {

// ---------------------------------------------------------------- parsing

u64 parse_count(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != '_' && c != ',' && c != ' ') s += c;
    if (s.empty()) throw DomainError("cli", "empty number");
    auto all_digits = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto pow10 = [](u64 base, unsigned e, const std::string& orig) {
        u128 v = base;
        for (unsigned i = 0; i < e; ++i) {
            v *= 10;
            if (v > u128(~u64{0})) throw DomainError("cli", "number out of range: " + orig);
        }
        return static_cast<u64>(v);
    };
    if (all_digits(s)) return std::stoull(s);
    std::size_t mul = s.find('*');
    u64 factor = 1;
    std::string rest = s;
    if (mul != std::string::npos) {
        if (!all_digits(s.substr(0, mul))) throw DomainError("cli", "cannot parse number: " + text);
        factor = std::stoull(s.substr(0, mul));
        rest = s.substr(mul + 1);
    }
    if (rest.rfind("10^", 0) == 0 && all_digits(rest.substr(3)))
        return pow10(factor, std::stoul(rest.substr(3)), text);
    const std::size_t e = rest.find_first_of("eE");
    if (mul == std::string::npos && e != std::string::npos && all_digits(rest.substr(e + 1))) {
        const std::string mant = rest.substr(0, e);
        const std::size_t dot = mant.find('.');
        std::string digits = mant;
        unsigned shift = std::stoul(rest.substr(e + 1));
        if (dot != std::string::npos) {
            const std::string frac = mant.substr(dot + 1);
            digits = mant.substr(0, dot) + frac;
            if (frac.size() > shift) throw DomainError("cli", "not an integer: " + text);
            shift -= static_cast<unsigned>(frac.size());
        }
        if (all_digits(digits)) return pow10(std::stoull(digits), shift, text);
    }
    throw DomainError("cli", "cannot parse number: " + text);
}

Spacing parse_spacing(const std::string& s) {
    if (s == "linear") return Spacing::Linear;
    if (s == "log") return Spacing::Log;
    if (s == "every" || s == "every-integer" || s == "integer") return Spacing::EveryInteger;
    throw DomainError("cli", "unknown spacing '" + s + "' (linear, log, every)");
}

void validate(const SweepSpec& spec) {
    if (spec.lo < 2) throw DomainError("cli", "sweep: lo must be >= 2");
    if (spec.hi < spec.lo) throw DomainError("cli", "sweep: hi must be >= lo");
    if (spec.spacing != Spacing::EveryInteger && spec.points < 2)
        throw DomainError("cli", "sweep: need at least 2 points");
    if (spec.columns.empty()) throw DomainError("cli", "sweep: no columns");
    for (const auto& c : spec.columns)
        if (!is_known_column(c)) throw DomainError("cli", "sweep: unknown column '" + c + "'");
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cli", "cannot open figure spec " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cli", path + ": " + e.what());
    }
    SweepSpec s;
    auto num = [&](const char* key) {
        const auto& v = j.at(key);
        return v.is_string() ? parse_count(v.get<std::string>()) : v.get<u64>();
    };
    try {
        s.name = j.value("name", "");
        s.caption = j.value("caption", "");
        s.lo = num("lo");
        s.hi = num("hi");
        s.spacing = parse_spacing(j.value("spacing", "every"));
        s.points = j.value("points", 0);
        s.columns = j.at("columns").get<std::vector<std::string>>();
        s.allow_slow = j.value("allow_slow", false);
        s.budget_seconds = j.value("budget_seconds", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cli", path + ": " + e.what());
    }
    validate(s);
    return s;
}

std::vector<u64> sweep_grid(const SweepSpec& spec) {
    validate(spec);
    std::vector<u64> g;
    if (spec.spacing == Spacing::EveryInteger) {
        for (u64 n = spec.lo; n <= spec.hi; ++n) g.push_back(n);
        return g;
    }
    const double a = double(spec.lo), b = double(spec.hi);
    for (int k = 0; k < spec.points; ++k) {
        const double t = double(k) / (spec.points - 1);
        const double v = spec.spacing == Spacing::Log ? std::exp(std::log(a) + (std::log(b) - std::log(a)) * t)
                                                      : a + (b - a) * t;
        g.push_back(std::clamp<u64>(static_cast<u64>(std::llround(v)), spec.lo, spec.hi));
    }
    g.front() = spec.lo;
    g.back() = spec.hi;
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// ---------------------------------------------------------------- columns

u64 PointContext::get_pi() {
    if (!pi) pi = table.pi(n);
    return *pi;
}
double PointContext::get_pps() {
    if (!pps) pps = prime_power_sum(n, table).value;
    return *pps;
}
double PointContext::get_g_exact() {
    if (!g_exact) g_exact = exact_truncation_for(n, get_pi()).x;
    return *g_exact;
}
double PointContext::get_g_avg() {
    if (!g_avg) {
        if (n < 4) throw DomainError("solvers", "avg_truncation: n must be >= 4");
        g_avg = avg_truncation_for(double(n), get_pps()).x;
    }
    return *g_avg;
}

namespace {

using Fn = double (*)(PointContext&);

double nd(const PointContext& c) { return static_cast<double>(c.n); }

const std::vector<std::pair<std::string, Fn>>& registry() {
    static const std::vector<std::pair<std::string, Fn>> r{
        {"pi", [](PointContext& c) { return double(c.get_pi()); }},
        {"li", [](PointContext& c) { return li(nd(c)); }},
        {"Rn", [](PointContext& c) { return riemann_r(nd(c)); }},
        {"tau", [](PointContext& c) { return stieltjes_tau(nd(c)).tau; }},
        {"li_tau", [](PointContext& c) { return li_expansion(nd(c), stieltjes_tau(nd(c)).tau).value; }},
        {"li_trunc", [](PointContext& c) { return li_expansion(nd(c), c.get_g_avg()).value; }},
        {"g_exact", [](PointContext& c) { return c.get_g_exact(); }},
        {"g_avg", [](PointContext& c) { return c.get_g_avg(); }},
        {"g_asym",
         [](PointContext& c) {
             if (c.n < 9) throw DomainError("solvers", "avg_truncation_asymptotic: undefined below n = 9");
             return avg_truncation_asymptotic_for(nd(c), c.get_pps() / nd(c)).x;
         }},
        {"g_first", [](PointContext& c) { return avg_truncation_first_order_for(nd(c), beta_n(c.n)).x; }},
        {"g_limit", [](PointContext& c) { return limit_form(nd(c), LimitVariant::Simple).x; }},
        {"g_limit_loglog", [](PointContext& c) { return limit_form(nd(c), LimitVariant::LogLog).x; }},
        {"sigma", [](PointContext& c) { return sigma_tilde(nd(c), c.get_g_exact()); }},
        {"correction", [](PointContext& c) { return correction_factor(nd(c), c.get_g_exact()); }},
        {"pps", [](PointContext& c) { return c.get_pps(); }},
        {"density",
         [](PointContext& c) {
             if (c.n < 4) throw DomainError("primes", "density: n must be >= 4");
             return c.get_pps() / nd(c);
         }},
        {"beta", [](PointContext& c) { return beta_n(c.n); }},
        {"theta", [](PointContext& c) { return c.table.theta(c.n); }},
        {"f1", [](PointContext& c) { return f1(nd(c)); }},
        {"f1_envelope", [](PointContext& c) { return f1_envelope(nd(c)); }},
        {"f2", [](PointContext& c) { return schoenfeld_leading(nd(c)) + c.get_pps() + truncation_constant(); }},
        {"schoenfeld_b",
         [](PointContext& c) {
             if (c.n < 2657) throw DomainError("bounds", "schoenfeld_b_bound: only valid for n >= 2657");
             return schoenfeld_leading(nd(c)) + c.get_pps() + truncation_constant();
         }},
        {"trunc_bound_avg", [](PointContext& c) { return truncation_bound(nd(c), c.get_g_avg()); }},
        {"trunc_bound_loglog",
         [](PointContext& c) { return truncation_bound(nd(c), limit_form(nd(c), LimitVariant::LogLog).x); }},
        {"trunc_bound_simple",
         [](PointContext& c) { return truncation_bound(nd(c), limit_form(nd(c), LimitVariant::Simple).x); }},
    };
    return r;
}

} // namespace

const std::vector<std::string>& known_columns() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [k, f] : registry()) v.push_back(k);
        return v;
    }();
    return ids;
}

bool is_known_column(const std::string& id) {
    const auto& k = known_columns();
    return std::find(k.begin(), k.end(), id) != k.end();
}

double evaluate(const std::string& column, PointContext& ctx) {
    for (const auto& [k, f] : registry())
        if (k == column) return f(ctx);
    throw DomainError("cli", "unknown column '" + column + "'");
}

// ---------------------------------------------------------------- sweep

SweepResult run_sweep(const SweepSpec& spec, const PrimeTable& table, unsigned jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult r;
    r.grid = sweep_grid(spec);
    r.columns = spec.columns;
    r.values.assign(r.grid.size(), std::vector<std::optional<double>>(spec.columns.size()));

    // a contiguous run above the sieve is cheaper as one count plus a window sieve
    std::vector<u64> window;
    if (spec.spacing == Spacing::EveryInteger && spec.hi > table.small_limit() &&
        std::any_of(spec.columns.begin(), spec.columns.end(), [](const std::string& c) {
            return c == "pi" || c == "g_exact" || c == "sigma" || c == "correction";
        }))
        window = table.pi_window(spec.lo, spec.hi);

    struct Failure {
        std::size_t count = 0;
        u64 first_n = 0;
        std::string first_error;
    };
    std::vector<Failure> failures(spec.columns.size());
    std::mutex fail_mu;
    std::exception_ptr fatal;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < r.grid.size();) {
            PointContext ctx(r.grid[i], table);
            if (!window.empty()) ctx.pi = window[r.grid[i] - spec.lo];
            for (std::size_t c = 0; c < spec.columns.size(); ++c) {
                try {
                    const double v = evaluate(spec.columns[c], ctx);
                    if (std::isfinite(v)) r.values[i][c] = v;
                } catch (const DomainError& e) {
                    std::lock_guard lock(fail_mu);
                    auto& f = failures[c];
                    if (f.count++ == 0 || r.grid[i] < f.first_n) {
                        f.first_n = r.grid[i];
                        f.first_error = e.what();
                    }
                } catch (...) {
                    std::lock_guard lock(fail_mu);
                    if (!fatal) fatal = std::current_exception();
                    next = r.grid.size();
                    return;
                }
            }
        }
    };
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, r.grid.size()));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (fatal) std::rethrow_exception(fatal);

    for (std::size_t c = 0; c < spec.columns.size(); ++c)
        if (failures[c].count)
            r.warnings.push_back("column " + spec.columns[c] + ": " + std::to_string(failures[c].count) +
                                 " empty cell(s), first at n=" + std::to_string(failures[c].first_n) + " (" +
                                 failures[c].first_error + ")");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string format_number(double v, int digits) {
    if (!std::isfinite(v)) return "";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(digits);
    os << v;
    return os.str();
}

void write_csv(std::ostream& out, const SweepResult& r, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << 'n';
    for (const auto& c : r.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        out << r.grid[i];
        for (const auto& v : r.values[i]) out << ',' << (v ? format_number(*v) : std::string());
        out << '\n';
    }
}

} // namespace litrunc
