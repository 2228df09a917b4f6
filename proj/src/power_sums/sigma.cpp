#include "harmfrob/harmonic.hpp"
#include "harmfrob/power_sums.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace hf {

int SigmaTerm::pa_weight() const {
    int s = 0;
    for (auto& J : har_pa) s += J.weight();
    return s;
}

int SigmaTerm::grade() const {
    return m_power + har_m.weight() + pa_weight();
}

namespace {

using TermKey = std::tuple<int, Composition, std::vector<Composition>>;

struct Block {
    int first = 0;     // inner index of the first (innermost) element
    int size = 0;
    bool divisible = false;   // first element is a multiple of p^alpha
};

}  // namespace

// Write m_i = q u_i + r_i (0 <= r_i < q, m = upper/q). Elements with equal u form contiguous
// blocks; inside a block only the first element may have r = 0. Expanding (q u + r)^{-n}
// binomially and summing over r gives har_q factors, the u-chain is then turned into
// harmonic sums in m.
SigmaExpansion expand_sigma(const Composition& I, int N) {
    const int w = I.weight();
    const int d = I.depth();
    if (N < w) throw CutoffError("cutoff below the weight of the index");
    std::vector<int> n(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) n[static_cast<size_t>(i)] = I.parts[static_cast<size_t>(d - 1 - i)];

    std::map<TermKey, Rational> acc;
    if (d == 0) acc[{0, Composition(), {}}] = Rational(1);

    for (unsigned cuts = 0; d > 0 && cuts < (1u << (d - 1)); ++cuts) {
        std::vector<Block> base;
        Block cur{0, 0, false};
        for (int i = 0; i < d; ++i) {
            ++cur.size;
            if (i == d - 1 || (cuts >> i) & 1u) {
                base.push_back(cur);
                cur = Block{i + 1, 0, false};
            }
        }
        const int nb = static_cast<int>(base.size());
        for (unsigned flags = 0; flags < (1u << nb); ++flags) {
            std::vector<Block> blocks = base;
            std::vector<int> free;   // inner indices of elements with r > 0
            int fixed_weight = 0;
            for (int k = 0; k < nb; ++k) {
                auto& B = blocks[static_cast<size_t>(k)];
                B.divisible = (flags >> k) & 1u;
                for (int i = B.first + (B.divisible ? 1 : 0); i < B.first + B.size; ++i) {
                    free.push_back(i);
                    fixed_weight += n[static_cast<size_t>(i)];
                }
            }
            if (fixed_weight > N) continue;
            std::vector<int> l(static_cast<size_t>(d), 0);
            auto emit = [&]() {
                Rational coeff = 1;
                for (int i : free) coeff *= binom_general(-n[static_cast<size_t>(i)], l[static_cast<size_t>(i)]);
                std::vector<Composition> pa;
                ChainSumSpec spec;
                spec.lower = blocks.front().divisible ? 1 : 0;
                for (int k = nb - 1; k >= 0; --k) {
                    const auto& B = blocks[static_cast<size_t>(k)];
                    int e = B.divisible ? -n[static_cast<size_t>(B.first)] : 0;
                    Composition J;
                    for (int i = B.first + B.size - 1; i >= B.first + (B.divisible ? 1 : 0); --i) {
                        e += l[static_cast<size_t>(i)];
                        J.parts.push_back(n[static_cast<size_t>(i)] + l[static_cast<size_t>(i)]);
                    }
                    spec.exponents.push_back(e);
                    if (!J.empty()) pa.push_back(std::move(J));
                }
                std::sort(pa.begin(), pa.end());
                int S = 0;
                for (auto& J : pa) S += J.weight();
                for (auto& [K, P] : eliminate_positive_powers(spec)) {
                    const auto& c = P.coeffs();
                    for (size_t j = 0; j < c.size(); ++j) {
                        if (c[j].is_zero()) continue;
                        if (w + static_cast<int>(j) + S > N) continue;
                        TermKey key{w - K.weight() + static_cast<int>(j), K, pa};
                        auto& slot = acc[key];
                        slot += coeff * c[j];
                    }
                }
            };
            auto rec = [&](auto&& self, size_t k, int budget) -> void {
                if (k == free.size()) {
                    emit();
                    return;
                }
                for (int x = 0; x <= budget; ++x) {
                    l[static_cast<size_t>(free[k])] = x;
                    self(self, k + 1, budget - x);
                }
                l[static_cast<size_t>(free[k])] = 0;
            };
            rec(rec, 0, N - fixed_weight);
        }
    }

    SigmaExpansion out;
    out.source = I;
    out.cutoff = N;
    for (auto& [key, c] : acc) {
        if (c.is_zero()) continue;
        SigmaTerm t;
        t.coeff = c;
        t.m_power = std::get<0>(key);
        t.har_m = std::get<1>(key);
        t.har_pa = std::get<2>(key);
        out.terms.push_back(std::move(t));
    }
    return out;
}

bool check_weight_bounds(const SigmaExpansion& e) {
    const int w = e.source.weight();
    const int d = e.source.depth();
    for (auto& t : e.terms) {
        int tot = t.m_power + t.har_m.weight();
        if (tot < w || tot > w + t.pa_weight() + d) return false;
        if (t.grade() > e.cutoff) return false;
    }
    return true;
}

std::string render_text(const SigmaExpansion& e) {
    std::ostringstream os;
    for (auto& t : e.terms) {
        os << "m^" << t.m_power;
        if (!t.har_m.empty()) os << " * har_m(" << t.har_m.str() << ")";
        if (!t.har_pa.empty()) {
            os << " * ";
            for (size_t i = 0; i < t.har_pa.size(); ++i) os << (i ? "*" : "") << "har_pa(" << t.har_pa[i].str() << ")";
        }
        os << " * " << t.coeff.str() << "\n";
    }
    return os.str();
}

std::string render_json(const SigmaExpansion& e) {
    nlohmann::json j;
    j["source"] = e.source.str();
    j["cutoff"] = e.cutoff;
    j["terms"] = nlohmann::json::array();
    for (auto& t : e.terms) {
        nlohmann::json pa = nlohmann::json::array();
        for (auto& J : t.har_pa) pa.push_back(J.str());
        j["terms"].push_back({{"coeff", t.coeff.str()}, {"m_power", t.m_power}, {"har_m", t.har_m.str()}, {"har_pa", pa}});
    }
    return j.dump(2);
}

Rational evaluate_rational(const SigmaExpansion& e, long p, int alpha, long m) {
    long q = ipow(p, static_cast<unsigned long>(alpha)).get_si();
    std::map<Composition, Rational> hq, hm;
    auto get = [](std::map<Composition, Rational>& memo, long M, const Composition& J) -> const Rational& {
        auto it = memo.find(J);
        if (it == memo.end()) it = memo.emplace(J, har(M, J)).first;
        return it->second;
    };
    Rational total = 0;
    for (auto& t : e.terms) {
        Rational x = t.coeff * Rational(m).pow(t.m_power) * get(hm, m, t.har_m);
        for (auto& J : t.har_pa) x *= get(hq, q, J);
        total += x;
    }
    return total;
}

PAdic evaluate_padic(const SigmaExpansion& e, long p, int alpha, long m, long K_work) {
    auto& cache = HarCache::global();
    PAdic total = PAdic::exact_zero(p);
    std::map<Composition, PAdic> hm;
    for (auto& t : e.terms) {
        auto it = hm.find(t.har_m);
        if (it == hm.end())
            it = hm.emplace(t.har_m, PAdic::from_rational(har(m, t.har_m), p, K_work + 64)).first;
        PAdic x = it->second * PAdic::from_rational(t.coeff * Rational(m).pow(t.m_power), p, K_work + 64);
        for (auto& J : t.har_pa) x *= cache.prime_power(p, alpha, J, K_work);
        total += x;
    }
    return total;
}

// A dropped term has grade w + j + S > N with excess m-degree j <= S + d, so its
// har_pa weight S is at least (N - w - d)/2 + 1. In depth one the valuation of
// C(-n,l) B_b^l har(n+l) is >= n + l - 1 - floor(log_p(l + 1)) and b <= l + 1.
// Deeper the margin is empirical.
long truncation_bound(const Composition& I, int N, long p, long m, int margin) {
    const int n = I.weight();
    if (I.depth() == 1) {
        long l = N - 2 * n - 1 < 0 ? 0 : (N - 2 * n - 1) / 2 + 1;
        return n + l - 1 - floor_log(p, l + 1);
    }
    long S = std::max(0, (N - n - I.depth()) / 2 + 1);
    long excess = m < 2 ? 0 : std::max<long>(0, floor_log(p, m - 1) - vp_int(m, p));
    return S - margin - floor_log(p, S + I.depth()) - static_cast<long>(n) * excess;
}

int cutoff_for(const Composition& I, long p, long m, long target, int margin) {
    int N = I.weight();
    while (truncation_bound(I, N, p, m, margin) < target) ++N;
    return N;
}

AdjointFormula extract_adjoint(const SigmaExpansion& e) {
    AdjointFormula out;
    const int w = e.source.weight();
    for (auto& t : e.terms)
        if (t.har_m.empty()) out[t.m_power - w].push_back(AdjointTerm{t.coeff, t.har_pa});
    return out;
}

PAdic evaluate_adjoint_terms(const std::vector<AdjointTerm>& terms, long p, int alpha, long K_work) {
    auto& cache = HarCache::global();
    PAdic total = PAdic::exact_zero(p);
    for (auto& t : terms) {
        PAdic x = PAdic::from_rational(t.coeff, p, K_work + 64);
        for (auto& J : t.har_pa) x *= cache.prime_power(p, alpha, J, K_work);
        total += x;
    }
    return total;
}

}  // namespace hf
