#include "litrunc/primes.hpp"
#include "litrunc/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace litrunc {

// ---------------------------------------------------------------- roots

namespace {

// b^r, saturating at 2^128 - 1
u128 sat_pow(u128 b, unsigned r) {
    const u128 max = ~u128{0};
    u128 acc = 1;
    for (unsigned i = 0; i < r; ++i) {
        if (b != 0 && acc > max / b) return max;
        acc *= b;
    }
    return acc;
}

template <class N> u64 iroot_impl(N n, unsigned r) {
    if (r == 0) throw DomainError("primes", "iroot: r must be positive");
    if (r == 1) {
        if (n > N(~u64{0})) throw DomainError("primes", "iroot: result exceeds 64 bits");
        return static_cast<u64>(n);
    }
    if (n < 2) return static_cast<u64>(n);
    const long double est = std::pow(static_cast<long double>(n), 1.0L / r);
    u64 x = static_cast<u64>(est);
    // the estimate is within a couple of units; fix it with exact powers
    while (x > 0 && sat_pow(x, r) > u128(n)) --x;
    while (sat_pow(u128(x) + 1, r) <= u128(n)) ++x;
    return x;
}

unsigned floor_log2(u128 n) {
    const u64 hi = static_cast<u64>(n >> 64);
    return hi ? 127 - std::countl_zero(hi) : 63 - std::countl_zero(static_cast<u64>(n));
}

} // namespace

u64 iroot(u64 n, unsigned r) { return iroot_impl<u64>(n, r); }
u64 iroot(u128 n, unsigned r) { return iroot_impl<u128>(n, r); }
u64 isqrt(u64 n) { return iroot(n, 2u); }

// ---------------------------------------------------------------- Lucy

u64 lucy_prime_count(u64 n, const kernels::Table& k) {
    if (n < 2) return 0;
    if (n >= kernels::kLucyExactLimit)
        throw ResourceError("primes", "combinatorial count limited to n < 2^52, got " + std::to_string(n));
    const u64 r = isqrt(n);
    // lo[v] = S(v), hi[i] = S(n/i); S starts as "all numbers >= 2" and loses
    // the composites with smallest factor p at each prime p <= sqrt(n).
    std::vector<std::uint32_t> lo(r + 1);
    std::vector<std::int64_t> hi(r + 1);
    for (u64 v = 1; v <= r; ++v) lo[v] = static_cast<std::uint32_t>(v - 1);
    for (u64 i = 1; i <= r; ++i) hi[i] = static_cast<std::int64_t>(n / i) - 1;

    for (u64 p = 2; p <= r; ++p) {
        if (lo[p] == lo[p - 1]) continue;
        const std::uint32_t sp = lo[p - 1];
        const u64 p2 = p * p;
        const u64 lim = std::min(r, n / p2);
        const u64 ir = std::min(lim, r / p);
        for (u64 i = 1; i <= ir; ++i) hi[i] -= hi[i * p] - sp;
        if (ir < lim) k.lucy_hi(hi.data(), lo.data(), n, p, sp, ir + 1, lim);
        if (p2 <= r) k.lucy_lo(lo.data(), p, sp, p2, r);
    }
    return static_cast<u64>(hi[1]);
}

// ---------------------------------------------------------------- sieve

// Odd-only bitset: bit i <-> 2i+1. Block prefix counts every 512 bits.
struct PrimeTable::Sieve {
    u64 limit = 0;
    std::vector<u64> words;
    std::vector<std::uint32_t> block_prefix;

    explicit Sieve(u64 lim) : limit(std::max<u64>(lim, 3)) {
        const u64 nbits = limit / 2 + 1;                   // indices 0..(limit-1)/2 (+ slack)
        const u64 nwords = ((nbits + 63) / 64 + 7) / 8 * 8;
        words.assign(nwords, 0);

        const u64 root = isqrt(limit);
        std::vector<char> small(root + 1, 1);
        std::vector<u64> base;
        for (u64 p = 3; p <= root; p += 2) {
            if (!small[p]) continue;
            base.push_back(p);
            for (u64 q = p * p; q <= root; q += 2 * p) small[q] = 0;
        }

        constexpr u64 seg = u64{1} << 18;   // odd numbers per segment
        std::vector<char> buf(seg);
        const u64 last_index = (limit - 1) / 2;
        for (u64 i0 = 0; i0 <= last_index; i0 += seg) {
            const u64 i1 = std::min(last_index, i0 + seg - 1);
            std::fill(buf.begin(), buf.begin() + (i1 - i0 + 1), 1);
            const u64 hi_num = 2 * i1 + 1;
            for (u64 p : base) {
                if (p * p > hi_num) break;
                // first odd multiple >= max(p^2, 2*i0+1)
                const u64 lo_num = 2 * i0 + 1;
                u64 start = std::max(p * p, (lo_num + p - 1) / p * p);
                if (start % 2 == 0) start += p;
                for (u64 j = (start - 1) / 2; j <= i1; j += p) buf[j - i0] = 0;
            }
            for (u64 j = i0; j <= i1; ++j)
                if (buf[j - i0]) words[j / 64] |= u64{1} << (j % 64);
        }
        words[0] &= ~u64{1};  // 1 is not prime

        const std::size_t nblocks = words.size() / 8;
        std::vector<std::uint32_t> counts(nblocks);
        kernels::active().popcount_blocks(words.data(), nblocks, counts.data());
        block_prefix.resize(nblocks + 1);
        block_prefix[0] = 0;
        for (std::size_t b = 0; b < nblocks; ++b) block_prefix[b + 1] = block_prefix[b] + counts[b];
    }

    u64 pi(u64 m) const {
        if (m < 2) return 0;
        if (m == 2) return 1;
        const u64 idx = (m - 1) / 2;
        const u64 w = idx / 64, b = w / 8;
        u64 c = block_prefix[b];
        for (u64 k = 8 * b; k < w; ++k) c += std::popcount(words[k]);
        const unsigned bit = idx % 64;
        const u64 mask = bit == 63 ? ~u64{0} : (u64{2} << bit) - 1;
        return 1 + c + std::popcount(words[w] & mask);
    }

    template <class F> void each(u64 upto, F&& f) const {
        if (upto < 2) return;
        f(u64{2});
        const u64 last = (std::min(upto, limit) - 1) / 2;
        for (u64 w = 0; w <= last / 64; ++w) {
            u64 bits = words[w];
            while (bits) {
                const u64 idx = w * 64 + std::countr_zero(bits);
                if (idx > last) return;
                f(2 * idx + 1);
                bits &= bits - 1;
            }
        }
    }
};

// ---------------------------------------------------------------- fixture

std::string default_fixture_path() {
    if (const char* env = std::getenv("LITRUNC_FIXTURE")) return env;
#ifdef LITRUNC_DATA_DIR
    return std::string(LITRUNC_DATA_DIR) + "/pi_checkpoints.tsv";
#else
    return "";
#endif
}

std::vector<PiCheckpoint> load_checkpoints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("primes", "cannot open checkpoint fixture " + path);
    std::vector<PiCheckpoint> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key, value, source;
        if (!std::getline(ss, key, '\t') || !std::getline(ss, value, '\t') || !std::getline(ss, source))
            throw IoError("primes", path + ":" + std::to_string(lineno) + ": expected 3 tab-separated fields");
        if (key.rfind("10^", 0) != 0 || value.empty() ||
            !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw IoError("primes", path + ":" + std::to_string(lineno) + ": malformed record");
        PiCheckpoint c;
        c.k = std::stoi(key.substr(3));
        c.decimal = value;
        c.value = std::strtold(value.c_str(), nullptr);
        c.source = source;
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------- table

PrimeTable::PrimeTable() : PrimeTable(Options{}) {}

PrimeTable::PrimeTable(Options opts) : opts_(std::move(opts)) {
    if (opts_.small_limit < 100) opts_.small_limit = 100;
    sieve_ = std::make_unique<Sieve>(opts_.small_limit);
    if (!opts_.fixture_path.empty() && std::filesystem::exists(opts_.fixture_path))
        checkpoints_ = load_checkpoints(opts_.fixture_path);
    if (!opts_.cache_path.empty()) load_cache();
}

PrimeTable::~PrimeTable() = default;

u64 PrimeTable::sieve_pi(u64 m) const { return sieve_->pi(m); }

std::optional<PiCheckpoint> PrimeTable::checkpoint(int k) const {
    for (const auto& c : checkpoints_)
        if (c.k == k) return c;
    return std::nullopt;
}

namespace {
std::optional<int> exact_power_of_ten(u64 m) {
    int k = 0;
    for (; m >= 10 && m % 10 == 0; m /= 10) ++k;
    if (m == 1 && k > 0) return k;
    return std::nullopt;
}
} // namespace

u64 PrimeTable::combinatorial_pi(u64 m) const {
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    }
    if (m > opts_.max_n || opts_.backend == Backend::SieveOnly) {
        if (auto k = exact_power_of_ten(m))
            if (auto c = checkpoint(*k)) return std::stoull(c->decimal);
        throw ResourceError("primes", "pi(" + std::to_string(m) + ") exceeds the configured maximum " +
                                          std::to_string(opts_.backend == Backend::SieveOnly ? opts_.small_limit
                                                                                             : opts_.max_n));
    }
    if (m > opts_.slow_threshold) {
        if (!opts_.allow_slow)
            throw ResourceError("primes", "pi(" + std::to_string(m) + ") is a long-running computation; "
                                          "pass --allow-slow to permit it");
        if (opts_.progress) opts_.progress("computing pi(" + std::to_string(m) + ")");
    }
    const u64 v = lucy_prime_count(m);
    std::lock_guard lock(mu_);
    if (cache_.emplace(m, v).second) append_cache(m, v);
    return v;
}

u64 PrimeTable::pi(u64 m) const {
    if (m <= opts_.small_limit) return sieve_pi(m);
    return combinatorial_pi(m);
}

std::vector<u64> PrimeTable::pi_window(u64 lo, u64 hi) const {
    if (hi < lo) throw DomainError("primes", "pi_window: empty range");
    std::vector<u64> out(hi - lo + 1);
    if (hi <= opts_.small_limit) {
        for (u64 m = lo; m <= hi; ++m) out[m - lo] = sieve_pi(m);
        return out;
    }
    if (isqrt(hi) > opts_.small_limit) throw ResourceError("primes", "pi_window: range beyond small_limit^2");
    // marks[j] <-> lo + 1 + j
    std::vector<char> composite(hi - lo, 0);
    const u64 base = lo + 1;
    sieve_->each(isqrt(hi), [&](u64 p) {
        u64 start = std::max(p * p, (base + p - 1) / p * p);
        for (u64 q = start; q <= hi; q += p) composite[q - base] = 1;
    });
    u64 c = pi(lo);
    out[0] = c;
    for (u64 m = base; m <= hi; ++m) {
        if (m >= 2 && !composite[m - base]) ++c;
        out[m - lo] = c;
    }
    return out;
}

void PrimeTable::for_each_prime(u64 upto, const std::function<void(u64)>& f) const { sieve_->each(upto, f); }

double PrimeTable::theta(u64 m) const { return theta_batch({m}).front(); }

std::vector<double> PrimeTable::theta_batch(const std::vector<u64>& pts) const {
    if (!std::is_sorted(pts.begin(), pts.end())) throw DomainError("primes", "theta_batch: points must be sorted");
    std::vector<double> out(pts.size());
    if (pts.empty()) return out;
    if (pts.front() < 2) throw DomainError("primes", "theta: m must be >= 2");
    if (pts.back() > opts_.small_limit)
        throw DomainError("primes", "theta: m = " + std::to_string(pts.back()) + " beyond sieve range");

    const auto& k = kernels::active();
    double sum = 0, comp = 0;
    std::vector<double> buf;
    buf.reserve(4096);
    std::size_t next = 0;
    auto flush = [&] { k.neumaier_sum(buf.data(), buf.size(), sum, comp); buf.clear(); };
    sieve_->each(pts.back(), [&](u64 p) {
        while (next < pts.size() && pts[next] < p) {
            flush();
            out[next++] = sum + comp;
        }
        buf.push_back(std::log(static_cast<double>(p)));
        if (buf.size() == 4096) flush();
    });
    flush();
    while (next < pts.size()) out[next++] = sum + comp;
    return out;
}

// ---------------------------------------------------------------- cache

void PrimeTable::load_cache() {
    std::ifstream in(opts_.cache_path);
    if (!in) return;  // created on first write
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        u64 m = 0, v = 0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lu\t%lu%c", &m, &v, &tail) != 2)
            throw IoError("primes", opts_.cache_path + ":" + std::to_string(lineno) + ": malformed cache record");
        if (m <= opts_.small_limit && sieve_pi(m) != v)
            throw IoError("primes", opts_.cache_path + ":" + std::to_string(lineno) + ": cached pi(" +
                                        std::to_string(m) + ") = " + std::to_string(v) + " disagrees with sieve " +
                                        std::to_string(sieve_pi(m)));
        cache_[m] = v;
    }
}

void PrimeTable::append_cache(u64 m, u64 value) const {
    if (opts_.cache_path.empty()) return;
    std::ofstream out(opts_.cache_path, std::ios::app);
    if (!out) throw IoError("primes", "cannot append to cache " + opts_.cache_path);
    out << m << '\t' << value << '\n';
}

std::size_t PrimeTable::cache_size() const {
    std::lock_guard lock(mu_);
    return cache_.size();
}

std::map<u64, u64> PrimeTable::cache_snapshot() const {
    std::lock_guard lock(mu_);
    return cache_;
}

void PrimeTable::compact_cache() const {
    if (opts_.cache_path.empty()) return;
    std::lock_guard lock(mu_);
    const std::string tmp = opts_.cache_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("primes", "cannot write " + tmp);
        for (const auto& [m, v] : cache_) out << m << '\t' << v << '\n';
        if (!out) throw IoError("primes", "write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, opts_.cache_path, ec);
    if (ec) throw IoError("primes", "cannot replace " + opts_.cache_path + ": " + ec.message());
}

std::vector<std::pair<u64, u64>> PrimeTable::validate_cache() const {
    std::vector<std::pair<u64, u64>> bad;
    for (const auto& [m, v] : cache_snapshot())
        if (m <= opts_.small_limit && sieve_pi(m) != v) bad.emplace_back(m, v);
    return bad;
}

// ---------------------------------------------------------------- derived sums

u64 prime_count(u64 m, const PrimeTable& table) { return table.pi(m); }
double theta(u64 m, const PrimeTable& table) { return table.theta(m); }

namespace {

PrimePowerSum power_sum(u128 n, const PrimeTable& table) {
    PrimePowerSum s;
    s.n = static_cast<long double>(n);
    if (n < 4) return s;
    const unsigned top = floor_log2(n);
    double sum = 0, comp = 0;
    for (unsigned r = 2; r <= top; ++r) {
        const double t = static_cast<double>(table.pi(iroot(n, r))) / r;
        s.terms.emplace_back(r, t);
        const double u = sum + t;
        comp += std::fabs(sum) >= std::fabs(t) ? (sum - u) + t : (t - u) + sum;
        sum = u;
    }
    s.value = sum + comp;
    return s;
}

} // namespace

PrimePowerSum prime_power_sum(u64 n, const PrimeTable& table) {
    if (n < 2) throw DomainError("primes", "prime_power_sum: n must be >= 2");
    return power_sum(n, table);
}

PrimePowerSum prime_power_sum_wide(u128 n, const PrimeTable& table) {
    if (n < 2) throw DomainError("primes", "prime_power_sum: n must be >= 2");
    return power_sum(n, table);
}

Density density(u64 n, const PrimeTable& table) {
    if (n < 4) throw DomainError("primes", "density: n must be >= 4");
    return {static_cast<long double>(n), prime_power_sum(n, table).value / static_cast<double>(n)};
}

double beta_n(u64 n) {
    if (n < 4) throw DomainError("primes", "beta_n: n must be >= 4");
    const double L = std::log(static_cast<double>(n));
    const unsigned top = floor_log2(n);
    // factor out the dominant n^(1/2) so large n does not lose the tail terms
    double rest = 0;
    for (unsigned r = top; r >= 3; --r) rest += std::exp(L / r - L / 2);
    return 0.5 + std::log1p(rest) / L;
}

} // namespace litrunc
