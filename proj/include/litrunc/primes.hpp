#pragma once

#include "litrunc/kernels.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace litrunc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// floor(n^(1/r)), exact
u64 iroot(u64 n, unsigned r);
u64 iroot(u128 n, unsigned r);
u64 isqrt(u64 n);

// Lucy_Hedgehog dynamic programme over the values floor(n/k); O(n^(3/4)).
u64 lucy_prime_count(u64 n, const kernels::Table& k = kernels::active());

// OEIS A006880 value of pi(10^k), shipped as a read-only fixture.
struct PiCheckpoint {
    int k = 0;
    std::string decimal;
    long double value = 0;
    std::string source;
};

std::vector<PiCheckpoint> load_checkpoints(const std::string& path);
std::string default_fixture_path();

class PrimeTable {
public:
    enum class Backend { SieveOnly, Combinatorial };

    struct Options {
        u64 small_limit = 100'000'000;
        u64 max_n = 10'000'000'000'000ULL;
        Backend backend = Backend::Combinatorial;
        std::string cache_path;     // empty: in-memory only
        std::string fixture_path = default_fixture_path();  // empty: no checkpoints
        u64 slow_threshold = 10'000'000'000ULL;
        bool allow_slow = true;     // if false, pi(m) above slow_threshold is a resource error
        std::function<void(const std::string&)> progress;  // notified before slow computations
    };

    PrimeTable();
    explicit PrimeTable(Options opts);
    ~PrimeTable();
    PrimeTable(const PrimeTable&) = delete;
    PrimeTable& operator=(const PrimeTable&) = delete;

    u64 pi(u64 m) const;
    // pi(m) for every m in [lo, hi]: one count at lo, then a segmented sieve.
    std::vector<u64> pi_window(u64 lo, u64 hi) const;

    double theta(u64 m) const;
    std::vector<double> theta_batch(const std::vector<u64>& sorted_points) const;

    std::optional<PiCheckpoint> checkpoint(int k) const;
    const std::vector<PiCheckpoint>& checkpoints() const { return checkpoints_; }

    const Options& options() const { return opts_; }
    u64 small_limit() const { return opts_.small_limit; }
    std::size_t cache_size() const;
    std::map<u64, u64> cache_snapshot() const;

    // Rewrite the cache file sorted by m (entries are appended unsorted while running).
    void compact_cache() const;
    // Recheck every cached m <= small_limit against the sieve; returns mismatches.
    std::vector<std::pair<u64, u64>> validate_cache() const;

    // Every prime p <= min(upto, small_limit), ascending.
    void for_each_prime(u64 upto, const std::function<void(u64)>& f) const;

private:
    struct Sieve;
    u64 sieve_pi(u64 m) const;
    u64 combinatorial_pi(u64 m) const;
    void load_cache();
    void append_cache(u64 m, u64 value) const;

    Options opts_;
    std::unique_ptr<Sieve> sieve_;
    std::vector<PiCheckpoint> checkpoints_;
    mutable std::mutex mu_;
    mutable std::map<u64, u64> cache_;
};

u64 prime_count(u64 m, const PrimeTable& table);
double theta(u64 m, const PrimeTable& table);

struct PrimePowerSum {
    long double n = 0;
    double value = 0;                              // sum_{r=2}^{floor log2 n} pi(n^(1/r))/r
    std::vector<std::pair<unsigned, double>> terms;  // (r, pi(n^(1/r))/r)
};

PrimePowerSum prime_power_sum(u64 n, const PrimeTable& table);
PrimePowerSum prime_power_sum_wide(u128 n, const PrimeTable& table);

struct Density {
    long double n = 0;
    double d = 0;
};

Density density(u64 n, const PrimeTable& table);

// beta with sum_{r=2}^{floor log2 n} n^(1/r) = n^beta
double beta_n(u64 n);

} // namespace litrunc
