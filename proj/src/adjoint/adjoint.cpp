#include "harmfrob/adjoint.hpp"

#include <algorithm>

namespace hf {

// Terms of the entry (b, I) have grade w + b + S; those dropped by the cutoff N have
// har_pa weight S >= N - w - b + 1. In depth one each is C(-n,l) B_b^l har(n+l) with
// valuation >= S - 1 - v_p(b). Deeper we subtract a margin and the Faulhaber denominators.
long adjoint_entry_bound(const Composition& I, int b, int N, long p, int margin) {
    const long w = I.weight();
    if (I.depth() == 1) return N - w - b - (b > 0 ? vp_int(BigInt(b), p) : 0);
    return N - w - b + 1 - margin - floor_log(p, N + 1);
}

int adjoint_cutoff_for(const Composition& I, int b, long p, long K, int margin) {
    int N = I.weight() + b;
    while (adjoint_entry_bound(I, b, N, p, margin) < K) ++N;
    return N;
}

AdjointTable::AdjointTable(long p, int alpha, long K, std::optional<int> weight_cutoff, int margin)
    : p_(p), alpha_(alpha), K_(K), N_(weight_cutoff), margin_(margin) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (alpha < 1) throw std::invalid_argument("alpha must be positive");
}

const AdjointFormula& AdjointTable::formula(const Composition& I, int N) {
    auto key = std::make_pair(I, N);
    auto it = formulas_.find(key);
    if (it == formulas_.end()) it = formulas_.emplace(key, extract_adjoint(expand_sigma(I, N))).first;
    return it->second;
}

PAdic AdjointTable::entry(int b, const Composition& I) {
    if (b < 0) throw std::invalid_argument("negative e0 exponent");
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(b, I);
    auto hit = entries_.find(key);
    if (hit != entries_.end()) return hit->second;

    if (I.empty()) {
        PAdic v = b == 0 ? PAdic::from_int(1, p_, K_) : PAdic::zero(p_, K_);
        return entries_.emplace(key, v).first->second;
    }
    int N;
    if (N_) {
        if (b + I.weight() > *N_) throw CutoffError("b + weight exceeds the weight cutoff");
        N = *N_;
    } else {
        N = adjoint_cutoff_for(I, b, p_, K_, margin_);
    }
    long cert = std::min(K_, adjoint_entry_bound(I, b, N, p_, margin_));

    auto store = HarCache::global().store();
    if (store) {
        if (auto v = store->get("adjoint", p_, alpha_, I.str(), b, cert))
            return entries_.emplace(key, v->with_precision(cert)).first->second;
    }

    const auto& f = formula(I, N);
    PAdic value = PAdic::zero(p_, cert);
    auto terms = f.find(b);
    if (terms != f.end()) {
        long worst = 0;
        for (auto& t : terms->second) worst = std::max(worst, -t.coeff.vp(p_));
        value = evaluate_adjoint_terms(terms->second, p_, alpha_, cert + worst + 1);
        if (value.is_exact_zero()) value = PAdic::zero(p_, cert);
        value = value.with_precision(std::min(cert, value.precision()));
    }
    if (store) store->put(CacheRecord::make("adjoint", p_, alpha_, I.str(), b, value));
    return entries_.emplace(key, value).first->second;
}

PAdic AdjointTable::presented(int b, const Composition& I) {
    PAdic v = entry(b, I);
    return I.depth() % 2 ? -v : v;
}

PAdic adjoint_pmzv(long p, int alpha, int b, const Composition& I, long K, std::optional<int> weight_cutoff) {
    AdjointTable t(p, alpha, K, weight_cutoff);
    return t.entry(b, I);
}

LambdaSeries lambda_adjoint(AdjointTable& table, const Composition& I, int lambda_cutoff) {
    if (lambda_cutoff < I.weight()) throw CutoffError("Lambda cutoff below the weight of the index");
    LambdaSeries out;
    out.index = I;
    for (int b = 0; I.weight() + b <= lambda_cutoff; ++b) out.coeffs.push_back(table.presented(b, I));
    return out;
}

ResummationResult resummation_check(AdjointTable& table, const Composition& I, int B_max, int margin) {
    ResummationResult r;
    r.index = I;
    const long K = table.precision();
    r.direct = HarCache::global().prime_power(table.prime(), table.alpha(), I, K);
    r.resummed = PAdic::exact_zero(table.prime());
    for (int b = 0; b <= B_max; ++b) r.resummed += table.entry(b, I);
    r.defect_valuation = defect_valuation(r.direct, r.resummed);
    // the first dropped entries carry one Faulhaber denominator per depth, each up to p^floor(log_p(w + B + 1))
    r.threshold = std::min<long>(K, I.weight() + B_max + 1 - margin - I.depth() * floor_log(table.prime(), I.weight() + B_max + 1));
    r.pass = r.defect_valuation >= r.threshold;
    return r;
}

namespace {

// every composition with w(I) <= wmax and depth(I) <= dmax, empty one included
std::vector<Composition> compositions(int wmax, int dmax) {
    std::vector<Composition> out{Composition()};
    for (size_t i = 0; i < out.size(); ++i) {
        Composition I = out[i];
        if (I.depth() >= dmax) continue;
        for (int n = 1; I.weight() + n <= wmax; ++n) {
            Composition J = I;
            J.parts.insert(J.parts.begin(), n);
            out.push_back(J);
        }
    }
    return out;
}

}  // namespace

NcSeries<PAdic> adjoint_series(AdjointTable& table, int N, int D) {
    RingCtx<PAdic> ctx{table.prime(), table.precision()};
    NcSeries<PAdic> g(ctx, N, D);
    g.set(Word::e1(), ctx.from(Rational(1)));
    for (auto& I : compositions(N - 1, D - 1)) {
        if (I.empty()) continue;
        for (int b = 0; b + 1 + I.weight() <= N; ++b) {
            PAdic v = table.entry(b, I);
            if (!v.is_zero()) g.set(Word::e0_power(b) * Word::e1() * I.word(), v);
        }
    }
    return g;
}

NcSeries<PAdic> harmonic_series(long p, long prec, int N, int D,
                                const std::function<PAdic(const Composition&)>& value) {
    RingCtx<PAdic> ctx{p, prec};
    NcSeries<PAdic> h(ctx, N, D);
    for (auto& I : compositions(N - 1, D - 1)) {
        PAdic v = I.empty() ? ctx.from(Rational(1)) : value(I);
        if (v.is_exact_zero()) continue;
        Word tail = Word::e1() * I.word();
        for (int l = 0; l + tail.weight() <= N; ++l) h.set(Word::e0_power(l) * tail, v);
    }
    return h;
}

std::map<Composition, PAdic> circ_har_z(const NcSeries<PAdic>& g, const NcSeries<PAdic>& h, long m, int min_l) {
    check_compatible(g, h);
    const auto& ctx = g.ctx();
    PAdic lambda = PAdic::from_int(m, ctx.p, ctx.prec + 64);
    NcSeries<PAdic> A = tau_scale(lambda, g).scaled_q(Rational(1, m));
    NcSeries<PAdic> out = substitute_e1(h, A);
    const int D = g.depth_cutoff().value_or(g.weight_cutoff());
    // the increments only see b up to the cutoff; entries beyond it are about p^(N-2),
    // and har_m denominators can eat w * excess of that
    const long excess = m < 2 ? 0 : std::max<long>(0, floor_log(ctx.p, m - 1) - vp_int(BigInt(m), ctx.p));
    std::map<Composition, PAdic> values;
    for (auto& I : compositions(g.weight_cutoff() - 1 - min_l, D - 1)) {
        if (I.empty()) continue;
        const long cap = std::min<long>(ctx.prec, g.weight_cutoff() - 2 - I.weight() * excess);
        PAdic v = limit_e0(out, Word::e1() * I.word());
        values.emplace(I, v.with_precision(std::min(cap, v.precision())));
    }
    return values;
}

}  // namespace hf
