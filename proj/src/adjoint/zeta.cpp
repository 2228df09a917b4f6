#include "harmfrob/adjoint.hpp"

#include <algorithm>

namespace hf {

// Omitted terms l >= l_stop have valuation >= n + l - 2 - v_p(n-1): B_l costs at most one
// power of p and har_{p^alpha}(k) has valuation >= k.
ZetaDepth1Value zeta_depth1(long p, int alpha, int n, long K) {
    if (n < 2) throw std::invalid_argument("depth-one zeta needs n >= 2");
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    const long vd = vp_int(BigInt(n - 1), p);
    const long l_stop = std::max<long>(0, K - n + 2 + vd);
    const long work = K + 2 + vd;
    auto& cache = HarCache::global();
    PAdic total = PAdic::exact_zero(p);
    for (long l = 0; l < l_stop; ++l) {
        Rational c = binom_general(1 - n, l) * bernoulli(l) / Rational(n - 1);
        if (c.is_zero()) continue;
        total += cache.prime_power(p, alpha, Composition{n + static_cast<int>(l) - 1}, work).mul_rational(c);
    }
    if (total.is_exact_zero()) total = PAdic::zero(p, K);
    ZetaDepth1Value out;
    out.p = p;
    out.alpha = alpha;
    out.n = n;
    out.value = total.with_precision(std::min(K, total.precision()));
    out.truncation_l = l_stop;
    return out;
}

}  // namespace hf
