#pragma once

#include "harmfrob/arith.hpp"
#include "harmfrob/words.hpp"

#include <map>
#include <string>
#include <vector>

namespace hf {

// sum_{0<=u<m} u^l as a polynomial in m
const Polynomial& power_sum_poly(int l);

// sum_{0<=n_1<...<n_r<m} prod n_i^{l_i}; exponents listed outermost first (l_r, ..., l_1)
Polynomial chain_poly(const std::vector<int>& exponents);
// coefficient of m^b in chain_poly; requires 1 <= b <= sum l + r
Rational b_coeff(const std::vector<int>& exponents, int b);
// C(l+1, b)/(l+1) * B_{l+1-b}
Rational b_coeff_closed(int l, int b);

// sum_{lower<=u_1<u_2<...<u_r<m} prod u_i^{e_i}, exponents outermost first
struct ChainSumSpec {
    std::vector<int> exponents;
    int lower = 1;   // 0 or 1; 0 needs a nonnegative innermost exponent
};
Rational chain_brute(const ChainSumSpec& spec, long m);

// sum_K c_K(m) H_m(K), H the unweighted harmonic sum (H_m(empty) = 1)
using HarCombination = std::map<Composition, Polynomial>;
HarCombination eliminate_positive_powers(const ChainSumSpec& spec);
Rational evaluate(const HarCombination& c, long m);
std::string render(const HarCombination& c);

// coeff * m^m_power * har_m(har_m_index) * prod har_{p^alpha}(har_pa[i]), weighted sums throughout
struct SigmaTerm {
    Rational coeff;
    int m_power = 0;
    Composition har_m;
    std::vector<Composition> har_pa;   // sorted, no empty entries

    int pa_weight() const;
    // m_power + w(har_m) + pa_weight; only the leading term has grade w(source)
    int grade() const;
};

struct SigmaExpansion {
    Composition source;
    int cutoff = 0;                // terms keep grade <= cutoff
    std::vector<SigmaTerm> terms;  // canonical order
};

SigmaExpansion expand_sigma(const Composition& I, int N);
// w <= m_power + w(har_m) <= w + (har_pa weight) + depth and grade <= cutoff for every term
bool check_weight_bounds(const SigmaExpansion& e);
std::string render_text(const SigmaExpansion& e);
std::string render_json(const SigmaExpansion& e);

Rational evaluate_rational(const SigmaExpansion& e, long p, int alpha, long m);
// har_{p^alpha} factors taken at absolute precision K_work; the result carries propagated precision
PAdic evaluate_padic(const SigmaExpansion& e, long p, int alpha, long m, long K_work);
// lower bound on the valuation of everything dropped by the cutoff, at upper bound p^alpha m
long truncation_bound(const Composition& I, int N, long p, long m, int margin = 1);
// smallest cutoff whose truncation bound reaches target
int cutoff_for(const Composition& I, long p, long m, long target, int margin = 1);

// (b, source) -> terms coeff * prod har_{p^alpha}(J) of m^{b+w} with empty har_m
struct AdjointTerm {
    Rational coeff;
    std::vector<Composition> har_pa;
};
using AdjointFormula = std::map<int, std::vector<AdjointTerm>>;
AdjointFormula extract_adjoint(const SigmaExpansion& e);
PAdic evaluate_adjoint_terms(const std::vector<AdjointTerm>& terms, long p, int alpha, long K_work);

// har_{p^alpha}(n) from har_{p^alpha0}(n + l), alpha0 | alpha
PAdic iterate_depth1(long p, int alpha0, int alpha, int n, long K);

}  // namespace hf
