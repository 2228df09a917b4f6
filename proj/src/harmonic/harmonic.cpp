#include "harmfrob/harmonic.hpp"

#include <algorithm>
#include <sstream>

namespace hf {

namespace {

// S_d(t) for t = 1..M (index t-1), innermost exponent consumed first
template <class R, class MakeInvPow>
std::vector<R> prefix_dp(long M, const Composition& I, const R& one, const R& zero, MakeInvPow inv_pow,
                         OpCounter* counter) {
    std::vector<R> S(static_cast<size_t>(M), one);
    for (auto it = I.parts.rbegin(); it != I.parts.rend(); ++it) {
        int n = *it;
        std::vector<R> T(static_cast<size_t>(M), zero);
        R acc = zero;
        for (long t = 2; t <= M; ++t) {
            long u = t - 1;
            acc = acc + S[static_cast<size_t>(u - 1)] * inv_pow(u, n);
            T[static_cast<size_t>(t - 1)] = acc;
        }
        if (counter) counter->ops += 2 * (M - 1);
        S = std::move(T);
    }
    return S;
}

Rational rat_inv_pow(long u, int n) { return Rational(BigInt(1), BigInt(ipow(u, static_cast<unsigned long>(n)))); }

}  // namespace

std::vector<Rational> har_range(long M, const Composition& I, OpCounter* counter) {
    if (M < 1) throw std::invalid_argument("har needs m >= 1");
    auto S = prefix_dp<Rational>(M, I, Rational(1), Rational(0), rat_inv_pow, counter);
    int w = I.weight();
    for (long m = 1; m <= M; ++m) S[static_cast<size_t>(m - 1)] *= Rational(BigInt(ipow(m, static_cast<unsigned long>(w))));
    return S;
}

Rational har_unweighted(long m, const Composition& I) {
    if (m < 1) throw std::invalid_argument("har needs m >= 1");
    return prefix_dp<Rational>(m, I, Rational(1), Rational(0), rat_inv_pow, nullptr).back();
}

Rational har(long m, const Composition& I) {
    return har_unweighted(m, I) * Rational(BigInt(ipow(m, static_cast<unsigned long>(I.weight()))));
}

namespace {

std::vector<PAdic> har_range_padic_at(long M, const Composition& I, long p, long A, OpCounter* counter) {
    auto inv_pow = [&](long u, int n) { return PAdic::from_rational(rat_inv_pow(u, n), p, A); };
    auto S = prefix_dp<PAdic>(M, I, PAdic::from_int(1, p, A), PAdic::exact_zero(p), inv_pow, counter);
    int w = I.weight();
    for (long m = 1; m <= M; ++m) {
        auto& x = S[static_cast<size_t>(m - 1)];
        x = x.mul_rational(Rational(BigInt(ipow(m, static_cast<unsigned long>(w)))));
    }
    return S;
}

long initial_precision(long M, const Composition& I, long p, long K) {
    long lam = M > 1 ? floor_log(p, M - 1) : 0;
    return K + 2 * lam * I.weight() + 4;
}

}  // namespace

std::vector<PAdic> har_range_padic(long M, const Composition& I, long p, long K, OpCounter* counter) {
    if (M < 1) throw std::invalid_argument("har needs m >= 1");
    long A = initial_precision(M, I, p, K);
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto S = har_range_padic_at(M, I, p, A, counter);
        long worst = PAdic::kInf;
        for (auto& x : S) worst = std::min(worst, x.precision());
        if (worst >= K) {
            for (auto& x : S) x = x.with_precision(K);
            return S;
        }
        A += (K - worst) + 4;
    }
    throw PrecisionExhausted("har: could not reach the requested precision");
}

PAdic har_padic(long m, const Composition& I, long p, long K) {
    if (m < 1) throw std::invalid_argument("har needs m >= 1");
    long A = initial_precision(m, I, p, K);
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto inv_pow = [&](long u, int n) { return PAdic::from_rational(rat_inv_pow(u, n), p, A); };
        auto S = prefix_dp<PAdic>(m, I, PAdic::from_int(1, p, A), PAdic::exact_zero(p), inv_pow, nullptr);
        PAdic x = S.back().mul_rational(Rational(BigInt(ipow(m, static_cast<unsigned long>(I.weight())))));
        if (x.precision() >= K) return x.with_precision(K);
        A += (K - x.precision()) + 4;
    }
    throw PrecisionExhausted("har: could not reach the requested precision");
}

Polynomial har_extended(long m, const Composition& I, int r) {
    if (r < 0) throw std::invalid_argument("negative extension degree");
    const int d = I.depth();
    Polynomial total;
    std::vector<int> rs(static_cast<size_t>(d), 0);
    // C(-l_f, k) as a polynomial in l_f
    auto lf_binom = [](int k) {
        Polynomial p(Rational(1));
        for (int i = 0; i < k; ++i) {
            Polynomial f = Polynomial::monomial(1, Rational(-1)) + Polynomial(Rational(-i));
            p = p * f;
        }
        return p * factorial(k).inverse();
    };
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == d) {
            Composition J = I;
            Rational c = 1;
            for (int i = 0; i < d; ++i) {
                J.parts[static_cast<size_t>(i)] += rs[static_cast<size_t>(i)];
                c *= binom_general(-I.parts[static_cast<size_t>(i)], rs[static_cast<size_t>(i)]);
            }
            total += lf_binom(left) * (c * har(m, J));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            rs[static_cast<size_t>(pos)] = k;
            self(self, pos + 1, left - k);
        }
    };
    rec(rec, 0, r);
    return total;
}

std::vector<FiniteMzvResidue> finite_mzv(const Composition& I, const std::vector<long>& primes) {
    std::vector<FiniteMzvResidue> out;
    const long w = I.weight();
    for (long p : primes) {
        if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
        PAdic x = har_padic(p, I, p, w + 1);
        if (!x.is_zero() && x.valuation() < w)
            throw ValuationViolation("v_p(har_p) below the weight for p=" + std::to_string(p) + ", index " + I.str());
        PAdic y = x.mul_rational(Rational(BigInt(1), ipow(p, static_cast<unsigned long>(w))));
        out.push_back({p, I, y.residue(1).get_si()});
    }
    return out;
}

std::string finite_mzv_csv(const std::vector<FiniteMzvResidue>& rows) {
    std::ostringstream os;
    os << "index,p,residue\n";
    for (auto& r : rows) os << '"' << r.index.str() << "\"," << r.p << ',' << r.residue << '\n';
    return os.str();
}

AlphaIndependenceReport check_alpha_independence(long p, const Composition& I, int alpha_max) {
    AlphaIndependenceReport rep{p, I, {}, true};
    const long w = I.weight();
    for (int a = 1; a <= alpha_max; ++a) {
        long m = ipow(p, static_cast<unsigned long>(a)).get_si();
        PAdic x = har_padic(m, I, p, w + 1);
        if (!x.is_zero() && x.valuation() < w) {
            rep.pass = false;
            rep.residues.push_back(-1);
            continue;
        }
        PAdic y = x.mul_rational(Rational(BigInt(1), ipow(p, static_cast<unsigned long>(w))));
        rep.residues.push_back(y.residue(1).get_si());
    }
    for (long r : rep.residues)
        if (r != rep.residues.front()) rep.pass = false;
    return rep;
}

HarCache& HarCache::global() {
    static HarCache c;
    return c;
}

void HarCache::attach_store(std::shared_ptr<CacheStore> store) {
    std::lock_guard<std::mutex> lock(mu_);
    store_ = std::move(store);
}

std::shared_ptr<CacheStore> HarCache::store() const {
    std::lock_guard<std::mutex> lock(mu_);
    return store_;
}

void HarCache::clear() {
    std::lock_guard<std::mutex> lock(mu_);
    mem_.clear();
}

PAdic HarCache::prime_power(long p, int alpha, const Composition& I, long K) {
    auto key = std::make_tuple(p, alpha, I);
    std::shared_ptr<CacheStore> store;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mem_.find(key);
        if (it != mem_.end() && it->second.precision() >= K) return it->second.with_precision(K);
        store = store_;
    }
    std::optional<PAdic> v;
    if (store) v = store->get("har", p, alpha, I.str(), 0, K);
    if (!v) {
        long m = ipow(p, static_cast<unsigned long>(alpha)).get_si();
        v = har_padic(m, I, p, K);
        if (store) store->put(CacheRecord::make("har", p, alpha, I.str(), 0, *v));
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find(key);
    if (it == mem_.end() || it->second.precision() < v->precision()) mem_[key] = *v;
    return v->with_precision(K);
}

}  // namespace hf
