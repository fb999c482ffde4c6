#pragma once

#include "litrunc/primes.hpp"

#include <string>
#include <vector>

namespace litrunc {

// |theta(n) - n| < eta n / ln^k n  for n >= n_k
struct DusartRow {
    int k;
    double eta;
    u64 n_k;
};
const std::vector<DusartRow>& dusart_table();

// int_2^inf dt / ((t^2 - 1) t ln t) ~ 0.140010, and ln 2 minus it ~ 0.553137
double truncation_constant_integral();
double truncation_constant();

// (n / ln n) Gamma(x) / ln^{x-1} n - 0.553137, in log space
double truncation_bound(double n, double x);

// sqrt(n) ln n / (8 pi) + prime_power_sum(n) + 0.553137
double schoenfeld_b_bound(u64 n, const PrimeTable& table);  // n >= 2657
double f2(u64 n, const PrimeTable& table);                  // same, ungated
double schoenfeld_leading(double n);                        // sqrt(n) ln n / (8 pi)

// Truncation bound with x = 0.1866823 ln n, and its Robbins-based envelope
double f1(double n);
double f1_envelope(double n);

struct EnvelopeConstants {
    double c;         // 0.1866823
    double a;         // e+ e c^{-1/2} ~ 17.14052
    double b;         // c^c ~ 0.7310176
    double ln_b;      // ~ -0.3133177
    double log_8pi_a; // ln(8 pi a) ~ 6.065617
};
EnvelopeConstants envelope_constants();

// e^{e^{ln(8 pi a) / 1.5}} ~ 5.915022e24
double simplified_crossing_analytic();

enum class CrossingPair { F1VsF2, TruncAvgVsSchoenfeld, TruncLogLogVsSchoenfeld };
const char* pair_name(CrossingPair p);

struct Crossing {
    double n;        // interpolated position
    u64 lo, hi;      // adjacent integers bracketing the sign change
    double d_lo, d_hi;
};

struct CrossingReport {
    CrossingPair pair;
    double n = 0;                 // last crossing in the range (beyond it the ordering holds)
    std::vector<Crossing> all;    // every sign change seen on the grid, ascending
};

// first minus second of the named pair at integer n
double crossing_difference(CrossingPair pair, u64 n, const PrimeTable& table);
CrossingReport find_crossing(CrossingPair pair, double lo, double hi, const PrimeTable& table, int grid = 4000);

enum class BoundForm { Simple, LogLog, ExactAvg };
const char* form_name(BoundForm f);
u64 form_threshold(BoundForm f);
double form_truncation(BoundForm f, u64 n, const PrimeTable& table);
bool verify_double_bound(u64 n, BoundForm f, const PrimeTable& table);

struct BoundSeries {
    std::vector<u64> grid;
    std::vector<double> truncation_bound;  // with gbar_pi
    std::vector<double> schoenfeld_b;      // ungated (f2)
    std::vector<double> f1;
    std::vector<double> f2;
    std::vector<std::pair<double, std::string>> crossings;
};
BoundSeries bound_series(const std::vector<u64>& grid, const PrimeTable& table);

} // namespace litrunc
