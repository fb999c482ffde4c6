#pragma once

#include "litrunc/primes.hpp"

namespace litrunc {

enum class Method { ExactPrime, AvgPrimeIntegral, AvgPrimeAsymptotic, ClosedFormW, LimitSimple, LimitLogLog };
const char* method_name(Method m);

struct TruncationSolution {
    double n = 0;
    double x = 0;
    double constraint_v = 0;  // the value the expansion (or integral) is matched to
    double residual = 0;      // model(x) - constraint_v; 0 for closed forms
    Method method = Method::ExactPrime;
    bool signed_regime = false;  // 2 <= n < 11 handled with the subtractive expansion
    bool exact_root = true;      // false: no root exists, x minimises |residual|
    int iterations = 0;
};

// g_pi(n): li(n;x) = pi(n)
TruncationSolution exact_truncation(u64 n, const PrimeTable& table);
TruncationSolution exact_truncation_for(u64 n, u64 pi_n);

// gbar_pi(n): prime_power_sum(n) = source_integral(n, x)
TruncationSolution avg_truncation(u64 n, const PrimeTable& table);
TruncationSolution avg_truncation_for(double n, double prime_power_sum);
// The unique stationary point (a minimum) of x -> source_integral(n, x).
double source_integral_argmin(double n);

// ln D / W_{-1}(ln D / (e ln n)), D the prime-power density; n >= 9
TruncationSolution avg_truncation_asymptotic(u64 n, const PrimeTable& table);
TruncationSolution avg_truncation_asymptotic_for(double n, double density);

// ((beta-1) ln n - ln ln n) / W_{-1}((beta-1)/e)
TruncationSolution avg_truncation_first_order(u64 n, const PrimeTable& table);
TruncationSolution avg_truncation_first_order_for(double n, double beta);

enum class LimitVariant { Simple, LogLog };
TruncationSolution limit_form(double n, LimitVariant v);

// -(1/2) / W_{-1}(-1/(2e)) ~ 0.186682
double limit_constant();

// Sign changes of li(n;x) - target over `samples` equal steps of [lo, hi].
int count_sign_changes(double n, double target, double lo, double hi, int samples = 100);

} // namespace litrunc
