#include "harmfrob/harmonic.hpp"
#include "harmfrob/power_sums.hpp"

#include <algorithm>

namespace hf {

// Depth-one version of the expansion with m = p^(alpha - alpha0), summed over l.
// The omitted tail (l > L) has valuation >= n + l - 1 - floor(log_p(l + 1)).
PAdic iterate_depth1(long p, int alpha0, int alpha, int n, long K) {
    if (alpha0 < 1 || alpha < alpha0 || alpha % alpha0 != 0) throw std::invalid_argument("alpha0 must divide alpha");
    if (n < 1) throw std::invalid_argument("depth-one index must be positive");
    if (alpha == alpha0) return HarCache::global().prime_power(p, alpha, Composition{n}, K);

    auto tail = [&](long l) { return n + l - 1 - floor_log(p, l + 1); };
    long L = 0;
    while (tail(L + 1) < K) ++L;
    long work = K + 2 + floor_log(p, L + 2);

    auto& cache = HarCache::global();
    PAdic total = PAdic::exact_zero(p);
    for (long l = 0; l <= L; ++l) {
        Rational c = binom_general(-n, l);
        Rational inner = 0;
        for (long b = 1; b <= l + 1; ++b) {
            BigInt num = ipow(p, static_cast<unsigned long>(alpha * (n + b))) - 1;
            BigInt den = ipow(p, static_cast<unsigned long>(alpha0 * (n + b))) - 1;
            inner += Rational(num, den) * b_coeff_closed(static_cast<int>(l), static_cast<int>(b));
        }
        if (inner.is_zero()) continue;
        PAdic h = cache.prime_power(p, alpha0, Composition{n + static_cast<int>(l)}, work);
        total += h.mul_rational(c * inner);
    }
    return total.with_precision(std::min(K, total.precision()));
}

}  // namespace hf
