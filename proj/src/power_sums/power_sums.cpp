#include "harmfrob/power_sums.hpp"
#include "harmfrob/harmonic.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace hf {

const Polynomial& power_sum_poly(int l) {
    if (l < 0) throw std::invalid_argument("negative power-sum exponent");
    static std::mutex mu;
    static std::vector<Polynomial> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= l) {
        int k = static_cast<int>(cache.size());
        Polynomial P;
        for (int j = 0; j <= k; ++j)
            P.add_term(k + 1 - j, binom_general(k + 1, j) * bernoulli(j) / Rational(k + 1));
        cache.push_back(P);
    }
    return cache[static_cast<size_t>(l)];
}

namespace {

// sum_{0<=u<t} u^e P(u) for a polynomial P and e >= 0
Polynomial sum_poly_below(int e, const Polynomial& P) {
    Polynomial out;
    const auto& c = P.coeffs();
    for (size_t j = 0; j < c.size(); ++j)
        if (!c[j].is_zero()) out += power_sum_poly(e + static_cast<int>(j)) * c[j];
    return out;
}

}  // namespace

Polynomial chain_poly(const std::vector<int>& exponents) {
    Polynomial P(Rational(1));
    for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) {
        if (*it < 0) throw std::invalid_argument("chain_poly needs nonnegative exponents");
        P = sum_poly_below(*it, P);
    }
    return P;
}

Rational b_coeff(const std::vector<int>& exponents, int b) {
    int top = static_cast<int>(exponents.size());
    for (int l : exponents) top += l;
    if (b < 1 || b > top) throw std::out_of_range("b outside 1..(sum l + r)");
    return chain_poly(exponents).coeff(b);
}

Rational b_coeff_closed(int l, int b) {
    if (b < 1 || b > l + 1) throw std::out_of_range("b outside 1..l+1");
    return binom_general(l + 1, b) / Rational(l + 1) * bernoulli(l + 1 - b);
}

Rational chain_brute(const ChainSumSpec& spec, long m) {
    const int r = static_cast<int>(spec.exponents.size());
    Rational total = 0;
    std::vector<long> u(static_cast<size_t>(r));
    // u[0] is the innermost variable
    auto rec = [&](auto&& self, int k, long lo) -> void {
        if (k == r) {
            Rational t = 1;
            for (int i = 0; i < r; ++i) {
                long x = u[static_cast<size_t>(i)];
                int e = spec.exponents[static_cast<size_t>(r - 1 - i)];
                if (x == 0) {
                    if (e < 0) throw std::domain_error("negative power of zero in chain sum");
                    if (e > 0) t = 0;
                } else {
                    t *= Rational(x).pow(e);
                }
            }
            total += t;
            return;
        }
        for (long x = lo; x < m; ++x) {
            u[static_cast<size_t>(k)] = x;
            self(self, k + 1, x + 1);
        }
    };
    rec(rec, 0, spec.lower);
    return total;
}

namespace {

void add_comb(HarCombination& acc, const Composition& K, const Polynomial& c) {
    if (c.is_zero()) return;
    auto& slot = acc[K];
    slot += c;
    if (slot.is_zero()) acc.erase(K);
}

// sum_{lower<=u<t} u^k H_u(K) as a combination in t
const HarCombination& sum_below(int k, const Composition& K, int lower) {
    static std::mutex mu;
    static std::map<std::tuple<int, Composition, int>, HarCombination> memo;
    auto key = std::make_tuple(k, K, K.empty() ? lower : 1);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    HarCombination out;
    if (k < 0) {
        if (K.empty() && lower == 0) throw std::domain_error("negative power of zero in chain sum");
        Composition J = K;
        J.parts.insert(J.parts.begin(), -k);
        out[J] = Polynomial(Rational(1));
    } else if (K.empty()) {
        Polynomial P = power_sum_poly(k);
        if (lower == 1 && k == 0) P -= Polynomial(Rational(1));
        add_comb(out, K, P);
    } else {
        // sum_{v<u<t} u^k = S_k(t) - S_k(v+1), then recurse on the inner chain
        add_comb(out, K, power_sum_poly(k));
        Composition rest(std::vector<int>(K.parts.begin() + 1, K.parts.end()));
        int n = K.parts.front();
        Polynomial shifted = power_sum_poly(k) + Polynomial::monomial(k);
        const auto& a = shifted.coeffs();
        for (size_t j = 0; j < a.size(); ++j) {
            if (a[j].is_zero()) continue;
            for (auto& [J, c] : sum_below(static_cast<int>(j) - n, rest, 1)) add_comb(out, J, c * (-a[j]));
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace

HarCombination eliminate_positive_powers(const ChainSumSpec& spec) {
    if (spec.lower != 0 && spec.lower != 1) throw std::invalid_argument("chain lower bound must be 0 or 1");
    HarCombination F;
    if (spec.exponents.empty()) {
        F[Composition()] = Polynomial(Rational(1));
        return F;
    }
    F = sum_below(spec.exponents.back(), Composition(), spec.lower);
    for (int i = static_cast<int>(spec.exponents.size()) - 2; i >= 0; --i) {
        int e = spec.exponents[static_cast<size_t>(i)];
        HarCombination G;
        for (auto& [K, c] : F) {
            const auto& cc = c.coeffs();
            for (size_t j = 0; j < cc.size(); ++j) {
                if (cc[j].is_zero()) continue;
                for (auto& [J, d] : sum_below(e + static_cast<int>(j), K, 1)) add_comb(G, J, d * cc[j]);
            }
        }
        F = std::move(G);
    }
    return F;
}

Rational evaluate(const HarCombination& c, long m) {
    Rational total = 0;
    for (auto& [K, P] : c) total += P.eval(Rational(m)) * har_unweighted(m, K);
    return total;
}

std::string render(const HarCombination& c) {
    std::ostringstream os;
    bool first = true;
    for (auto& [K, P] : c) {
        if (!first) os << " + ";
        first = false;
        os << "(" << P.str("m") << ")";
        if (!K.empty()) os << "*H_m(" << K.str() << ")";
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace hf
