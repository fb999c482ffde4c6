#pragma once

#include "litrunc/primes.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace litrunc {

enum class Spacing { Linear, Log, EveryInteger };

struct SweepSpec {
    std::string name;
    std::string caption;
    u64 lo = 2;
    u64 hi = 100;
    int points = 0;  // ignored for EveryInteger
    Spacing spacing = Spacing::EveryInteger;
    std::vector<std::string> columns;
    bool allow_slow = false;
    double budget_seconds = 0;  // 0: unbounded
};

SweepSpec load_sweep_spec(const std::string& path);
Spacing parse_spacing(const std::string& s);
void validate(const SweepSpec& spec);

// Integer grid; log/linear points are rounded and deduplicated.
std::vector<u64> sweep_grid(const SweepSpec& spec);

// "1000000", "1e6", "10^6", "2*10^4"
u64 parse_count(const std::string& s);

// Column identifiers understood by evaluate()/run_sweep().
const std::vector<std::string>& known_columns();
bool is_known_column(const std::string& id);

// Values shared by the columns of one grid point, filled on demand.
struct PointContext {
    explicit PointContext(u64 n, const PrimeTable& t) : n(n), table(t) {}
    u64 n;
    const PrimeTable& table;
    std::optional<u64> pi;
    std::optional<double> pps, g_exact, g_avg;
    u64 get_pi();
    double get_pps();
    double get_g_exact();
    double get_g_avg();
};

double evaluate(const std::string& column, PointContext& ctx);

struct SweepResult {
    std::vector<u64> grid;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> values;  // [row][column]
    std::vector<std::string> warnings;                      // one per column with failures
    double seconds = 0;
};

SweepResult run_sweep(const SweepSpec& spec, const PrimeTable& table, unsigned jobs = 0);

// 15 significant digits, '.' decimal, no locale
std::string format_number(double v, int digits = 15);
void write_csv(std::ostream& out, const SweepResult& r, const std::vector<std::string>& comments);

} // namespace litrunc
