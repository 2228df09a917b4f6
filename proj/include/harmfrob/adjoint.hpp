#pragma once

#include "harmfrob/harmonic.hpp"
#include "harmfrob/power_sums.hpp"
#include "harmfrob/words.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

namespace hf {

struct ZetaDepth1Value {
    long p = 0;
    int alpha = 0;
    int n = 0;
    PAdic value;
    long truncation_l = 0;   // terms l < truncation_l were summed
};

// (1/(n-1)) sum_l C(1-n,l) B_l har_{p^alpha}(n+l-1), certified to p^K
ZetaDepth1Value zeta_depth1(long p, int alpha, int n, long K);

// lower bound on everything the cutoff N drops from the entry (b, I)
long adjoint_entry_bound(const Composition& I, int b, int N, long p, int margin = 1);
int adjoint_cutoff_for(const Composition& I, int b, long p, long K, int margin = 1);

// Raw coefficients (Phi^{-1} e1 Phi)[e0^b e1 word(I)] for one (p, alpha), filled lazily.
// With a weight cutoff every entry uses that cutoff and the certified precision can
// fall below K; without one the cutoff is chosen per entry so that K is reached.
class AdjointTable {
public:
    AdjointTable(long p, int alpha, long K, std::optional<int> weight_cutoff = std::nullopt, int margin = 1);

    long prime() const { return p_; }
    int alpha() const { return alpha_; }
    long precision() const { return K_; }
    std::optional<int> weight_cutoff() const { return N_; }

    PAdic entry(int b, const Composition& I);
    // the value of the definition, (-1)^depth times the raw entry
    PAdic presented(int b, const Composition& I);

private:
    const AdjointFormula& formula(const Composition& I, int N);

    long p_;
    int alpha_;
    long K_;
    std::optional<int> N_;
    int margin_;
    std::mutex mu_;
    std::map<std::pair<int, Composition>, PAdic> entries_;
    std::map<std::pair<Composition, int>, AdjointFormula> formulas_;
};

PAdic adjoint_pmzv(long p, int alpha, int b, const Composition& I, long K,
                   std::optional<int> weight_cutoff = std::nullopt);

struct LambdaSeries {
    Composition index;
    // coeffs[b] multiplies Lambda^{w(index) + b}
    std::vector<PAdic> coeffs;
};
LambdaSeries lambda_adjoint(AdjointTable& table, const Composition& I, int lambda_cutoff);

struct ResummationResult {
    Composition index;
    PAdic direct;       // har_{p^alpha}(I)
    PAdic resummed;     // sum_{b <= B} entries
    long defect_valuation = 0;
    long threshold = 0;
    bool pass = false;
};
ResummationResult resummation_check(AdjointTable& table, const Composition& I, int B_max, int margin = 1);

// e1 + sum entry(b, I) e0^b e1 word(I) over b + w(I) + 1 <= N, depth <= D
NcSeries<PAdic> adjoint_series(AdjointTable& table, int N, int D);
// h[e0^l e1 word(I)] = value(I) for every l, value(empty) = 1
NcSeries<PAdic> harmonic_series(long p, long prec, int N, int D,
                                const std::function<PAdic(const Composition&)>& value);
// limit over l of (h o_Ad g at m)[e0^l e1 word(I)] for every I with w(I) + 1 <= N - min_l
std::map<Composition, PAdic> circ_har_z(const NcSeries<PAdic>& g, const NcSeries<PAdic>& h, long m, int min_l = 2);

}  // namespace hf
