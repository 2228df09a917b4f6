#include "harmfrob/relations.hpp"

#include <algorithm>

namespace hf {

namespace {

Report start(std::string name, nlohmann::json params) {
    Report r;
    r.name = std::move(name);
    r.params = std::move(params);
    return r;
}

// fold one (defect, threshold) pair into a report that needs every case to pass
struct Worst {
    long defect = PAdic::kInf;
    long threshold = 0;
    long slack = PAdic::kInf;
    bool pass = true;

    void add(long d, long t) {
        if (d < t) pass = false;
        if (d - t < slack || (d - t == slack && t > threshold)) {
            slack = d - t;
            defect = d;
            threshold = t;
        }
    }
    void into(Report& r) const {
        r.exact_zero = defect >= PAdic::kInf;
        r.defect_valuation = defect;
        r.threshold = threshold;
        r.pass = pass;
    }
};

long min_entry(const ValuationProfile& P, int s_min = 0) {
    long m = PAdic::kInf;
    for (int s = s_min; s <= P.N; ++s)
        for (int d = 0; d <= P.D; ++d) m = std::min(m, P.at(s, d));
    return m;
}

}  // namespace

Report check_adjoint_stuffle(long p, int alpha, int b, int n1, int n2, long K, int weight_cutoff) {
    if (b < 0 || n1 < 1 || n2 < 1 || b + n1 + n2 > weight_cutoff) {
        Report r = start("adjoint_stuffle", {{"p", p}, {"alpha", alpha}, {"b", b}, {"n1", n1}, {"n2", n2}, {"K", K}});
        r.status = "parameter-error";
        r.note = "b + n1 + n2 exceeds the weight cutoff " + std::to_string(weight_cutoff);
        return r;
    }
    return run_identity(adjoint_stuffle_identity(p, alpha, b, n1, n2, K));
}

Report check_expansion(long p, int alpha, const Composition& I, long m_max, long K) {
    Report r = start("expansion", {{"p", p}, {"alpha", alpha}, {"I", I.str()}, {"m_max", m_max}, {"K", K}});
    int N = I.weight();
    for (long m = 1; m <= m_max; ++m) N = std::max(N, cutoff_for(I, p, m, K));
    r.params["cutoff"] = N;
    SigmaExpansion e = expand_sigma(I, N);
    const long q = ipow(p, static_cast<unsigned long>(alpha)).get_si();
    Worst worst;
    r.details = nlohmann::json::array();
    for (long m = 1; m <= m_max; ++m) {
        PAdic exact = har_padic(q * m, I, p, K + 10);
        PAdic approx = evaluate_padic(e, p, alpha, m, K + 10);
        long t = std::min({K, truncation_bound(I, N, p, m), approx.precision()});
        long d = defect_valuation(exact, approx);
        worst.add(d, t);
        r.details.push_back({{"m", m}, {"defect_valuation", d}, {"threshold", t}});
    }
    worst.into(r);
    return r;
}

Report check_resummation(long p, int alpha, const Composition& I, int B_max, long K) {
    Report r = start("resummation", {{"p", p}, {"alpha", alpha}, {"I", I.str()}, {"B", B_max}, {"K", K}});
    auto res = resummation_check(shared_table(p, alpha, K), I, B_max);
    r.defect_valuation = res.defect_valuation;
    r.threshold = std::min({res.threshold, res.direct.precision(), res.resummed.precision()});
    if (r.threshold < res.threshold) r.note = "threshold lowered to the certified precision of the atoms";
    r.pass = r.defect_valuation >= r.threshold;
    return r;
}

Report check_zeta2(long p, int alpha, long K) {
    Report r = start("zeta2", {{"p", p}, {"alpha", alpha}, {"K", K}});
    auto z = zeta_depth1(p, alpha, 2, K);
    r.exact_zero = z.value.is_exact_zero();
    r.defect_valuation = z.value.valuation();
    r.threshold = std::min(K, z.value.precision());
    r.details = {{"l_stop", z.truncation_l}};
    r.pass = r.exact_zero || (r.defect_valuation >= r.threshold && r.threshold >= K && z.truncation_l <= 60);
    return r;
}

Report check_ahy(int n, long pmax) {
    Report r = start("ahy", {{"n", n}, {"pmax", pmax}});
    Worst worst;
    int count = 0;
    for (long p : primes_up_to(pmax)) {
        if (p <= n + 2) continue;
        const long K = n + 1;
        PAdic lhs = har_padic(p, Composition{n}, p, K);
        PAdic rhs = PAdic::exact_zero(p);
        if (n % 2 == 0) rhs = zeta_depth1(p, 1, n, K).value.mul_rational(Rational(2));
        worst.add(defect_valuation(lhs, rhs), K);
        ++count;
    }
    worst.into(r);
    r.details = {{"primes", count}};
    return r;
}

Report check_iteration(long p, int alpha0, int alpha, int n, long K) {
    Report r = start("iteration", {{"p", p}, {"alpha0", alpha0}, {"alpha", alpha}, {"n", n}, {"K", K}});
    PAdic it = iterate_depth1(p, alpha0, alpha, n, K);
    PAdic direct = HarCache::global().prime_power(p, alpha, Composition{n}, K);
    r.defect_valuation = defect_valuation(it, direct);
    r.threshold = std::min({K, it.precision(), direct.precision()});
    r.pass = r.defect_valuation >= r.threshold;
    return r;
}

Report check_finite_depth1(long pmax, int n) {
    Report r = start("finite_depth1", {{"pmax", pmax}, {"n", n}});
    auto rows = finite_mzv(Composition{n}, primes_up_to(pmax));
    long bad = 0;
    nlohmann::json nonzero = nlohmann::json::array();
    for (auto& row : rows) {
        long expect = (n % (row.p - 1) == 0) ? row.p - 1 : 0;
        if (row.residue != expect) ++bad;
        if (row.residue != 0) nonzero.push_back(row.p);
    }
    r.exact_zero = bad == 0;
    r.defect_valuation = bad;
    r.pass = bad == 0;
    r.details = {{"primes", rows.size()}, {"nonzero_at", nonzero}};
    if (bad) r.note = std::to_string(bad) + " residues disagree with the (p-1) | n rule";
    return r;
}

Report check_kz_shape(int n, const std::vector<long>& primes) {
    Report r = start("kz_shape", {{"n", n}, {"primes", primes}});
    long bad = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (long p : primes) {
        long lhs = finite_mzv(Composition{n}, {p}).front().residue;
        long rhs = 0;
        if (n % 2 == 0) {
            PAdic z = zeta_depth1(p, 1, n, n + 1).value.mul_rational(Rational(2));
            if (!z.is_zero() && z.valuation() < n) throw ValuationViolation("zeta below weight at p=" + std::to_string(p));
            rhs = z.mul_rational(Rational(BigInt(1), ipow(p, static_cast<unsigned long>(n)))).residue(1).get_si();
        }
        if (lhs != rhs) ++bad;
        rows.push_back({{"p", p}, {"residue", lhs}, {"zeta_side", rhs}});
    }
    r.exact_zero = bad == 0;
    r.defect_valuation = bad;
    r.pass = bad == 0;
    r.details = rows;
    return r;
}

Report check_alpha_independence_report(long p, const Composition& I, int alpha_max) {
    Report r = start("alpha_independence", {{"p", p}, {"I", I.str()}, {"alpha_max", alpha_max}});
    auto rep = check_alpha_independence(p, I, alpha_max);
    r.exact_zero = rep.pass;
    r.pass = rep.pass;
    r.details = {{"residues", rep.residues}};
    if (!rep.pass) r.note = "residue -1 marks a valuation below the weight";
    return r;
}

Report check_action_depth1(long p, int alpha, long m, int N, long K) {
    Report r = start("action_depth1", {{"p", p}, {"alpha", alpha}, {"m", m}, {"N", N}, {"K", K}});
    const int D = 2;
    AdjointTable& T = shared_table(p, alpha, K);
    auto g = adjoint_series(T, N, D);
    auto h = harmonic_series(p, K, N, D, [&](const Composition& I) { return PAdic::from_rational(har(m, I), p, K + 10); });
    const long q = ipow(p, static_cast<unsigned long>(alpha)).get_si();
    Worst worst;
    r.details = nlohmann::json::array();
    for (auto& [I, v] : circ_har_z(g, h, m)) {
        long d = defect_valuation(v, har_padic(q * m, I, p, K));
        worst.add(d, v.precision());
        r.details.push_back({{"I", I.str()}, {"defect_valuation", d}, {"threshold", v.precision()}});
    }
    worst.into(r);
    return r;
}

NcSeries<Rational> random_grouplike(std::mt19937_64& rng, int N, const Rational& scale) {
    RingCtx<Rational> ctx;
    std::uniform_int_distribution<long> c(-4, 4);
    auto gen = [&](int letter) { return NcSeries<Rational>::monomial(ctx, N, letter ? Word::e1() : Word::e0(), Rational(1)); };
    std::vector<NcSeries<Rational>> layer{gen(0), gen(1)};
    NcSeries<Rational> lie(ctx, N);
    for (auto& x : layer) lie += x.scaled(Rational(c(rng)) * scale);
    for (int w = 2; w <= N; ++w) {
        std::vector<NcSeries<Rational>> next;
        for (auto& x : layer) {
            for (int letter = 0; letter < 2; ++letter) {
                auto y = gen(letter) * x - x * gen(letter);
                if (y.size() == 0) continue;
                lie += y.scaled(Rational(c(rng)) * scale.pow(w));
                next.push_back(std::move(y));
            }
        }
        if (next.size() > 6) next.resize(6);
        layer = std::move(next);
    }
    return series_exp(lie);
}

Report check_ihara_group_law(int trials, int N, unsigned long long seed) {
    Report r = start("ihara_group_law", {{"trials", trials}, {"N", N}, {"seed", seed}});
    std::mt19937_64 rng(seed);
    auto one = NcSeries<Rational>::one(RingCtx<Rational>{}, N);
    long bad = 0;
    for (int t = 0; t < trials; ++t) {
        auto a = random_grouplike(rng, N);
        auto b = random_grouplike(rng, N);
        auto c = random_grouplike(rng, N);
        if (ihara(ihara(a, b), c).terms() != ihara(a, ihara(b, c)).terms()) ++bad;
        if (ihara(a, ihara_inverse(a)).terms() != one.terms()) ++bad;
    }
    r.exact_zero = bad == 0;
    r.defect_valuation = bad;
    r.pass = bad == 0;
    if (bad) r.note = std::to_string(bad) + " failed identities";
    return r;
}

// Pairs are built as f = f' o D, so the difference is carried by D. Then
// psi(f) = psi(f') o tau(p^alpha0) D exactly, which is the contraction.
Report check_contraction_suite(const ContractionOptions& o) {
    Report r = start("contraction", {{"p", o.p}, {"alpha0", o.alpha0}, {"trials", o.trials}, {"N", o.N},
                                     {"iterations", o.iterations}, {"seed", o.seed}});
    const long p = o.p;
    const int N = o.N;
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> small(0, 2);
    const Rational lambda(ipow(p, static_cast<unsigned long>(o.alpha0)));
    auto one = NcSeries<Rational>::one(RingCtx<Rational>{}, N);
    auto g = random_grouplike(rng, N);
    auto psi = [&](const NcSeries<Rational>& f) { return ihara(g, tau_scale(lambda, f)); };
    auto profile = [&](const NcSeries<Rational>& f) { return valuation_profile(f, p); };

    long slack = PAdic::kInf;
    long failures = 0;
    auto need = [&](long actual, long bound) {
        if (bound >= PAdic::kInf) return;
        slack = std::min(slack, actual - bound);
        if (actual < bound) ++failures;
    };

    // f = f': the difference is empty
    {
        auto fp = random_grouplike(rng, N);
        if (ihara(fp, one).terms() != fp.terms() || psi(fp).terms() != ihara(psi(fp), one).terms()) ++failures;
    }

    long shift_failures = 0;
    for (int t = 0; t < o.trials; ++t) {
        auto fp = random_grouplike(rng, N, Rational(p).pow(small(rng) % 2));
        auto D = random_grouplike(rng, N, Rational(p).pow(small(rng)));
        auto f = ihara(fp, D);

        // submultiplicativity
        auto Pf = profile(f);
        auto bound = minplus_convolution(minplus_closure(profile(fp)), profile(D));
        for (int s = 0; s <= N; ++s)
            for (int d = 0; d <= Pf.D; ++d) need(Pf.at(s, d), bound.at(s, d));

        // contraction: the new difference is tau(lambda) D
        auto tD = tau_scale(lambda, D);
        if (psi(f).terms() != ihara(psi(fp), tD).terms()) ++failures;
        auto PD = profile(D), PtD = profile(tD);
        for (int s = 1; s <= N; ++s)
            for (int d = 0; d <= PD.D; ++d) {
                if (PD.at(s, d) >= PAdic::kInf) continue;
                if (PtD.at(s, d) != PD.at(s, d) + s * o.alpha0) ++shift_failures;
                need(PtD.at(s, d), PD.at(s, d) + s * o.alpha0);
            }
    }

    // two seeds under the iteration
    nlohmann::json steps = nlohmann::json::array();
    auto b = random_grouplike(rng, N);
    auto Dk = random_grouplike(rng, N, Rational(p));
    auto a = ihara(b, Dk);
    const auto PD0 = profile(Dk);
    for (int k = 1; k <= o.iterations; ++k) {
        a = psi(a);
        b = psi(b);
        Dk = tau_scale(lambda, Dk);
        auto PDk = profile(Dk);
        for (int s = 1; s <= N; ++s)
            for (int d = 0; d <= PDk.D; ++d)
                if (PD0.at(s, d) < PAdic::kInf && PDk.at(s, d) != PD0.at(s, d) + k * s * o.alpha0) ++shift_failures;
        long cert = min_entry(PDk, 1) + std::min(0L, min_entry(minplus_closure(profile(b))));
        long actual = min_entry(profile(a - b));
        need(actual, cert);
        steps.push_back({{"k", k}, {"certified", cert}, {"agreement", actual}});
    }

    r.defect_valuation = slack;
    r.exact_zero = slack >= PAdic::kInf;
    r.threshold = 0;
    r.pass = failures == 0 && shift_failures == 0;
    r.details = {{"iteration", steps}, {"failures", failures}, {"shift_failures", shift_failures}};
    return r;
}

std::string DmrVariant::label() const {
    return std::string(sign_n ? "sign" : "nosign") + "/" + (antipode_sign ? "antipode" : "reversal");
}

namespace {

using QComb = std::map<Word, Rational>;

void add_comb(QComb& acc, const WordComb& c, const Rational& k) {
    for (auto& [w, n] : c) acc[w] += k * Rational(n);
}

void add_series(QComb& acc, const NcSeries<Rational>& s, const Rational& k) {
    for (auto& [w, c] : s.terms()) acc[w] += k * c;
}

QComb shuffle_with(const Word& w, const NcSeries<Rational>& s, const Rational& k) {
    QComb out;
    for (auto& [u, c] : s.terms()) add_comb(out, shuffle(w, u), k * c);
    return out;
}

QComb minus(QComb a, const QComb& b) {
    for (auto& [w, c] : b) a[w] -= c;
    for (auto it = a.begin(); it != a.end();) it = it->second.is_zero() ? a.erase(it) : std::next(it);
    return a;
}

// S_Y on the composition read off a word, optionally without its sign
std::pair<Rational, Word> antipode_y(const Word& u, bool with_sign) {
    auto [sign, J] = s_y(Composition::from_word(u));
    return {Rational(with_sign ? sign : 1), J.word()};
}

}  // namespace

Report check_dmr_shuffle(long p, int alpha, const Word& w, const Word& w2, int n, long K) {
    Report r = start("dmr_shuffle", {{"p", p}, {"alpha", alpha}, {"w", w.str()}, {"w2", w2.str()}, {"n", n}, {"K", K}});
    r.status = "report-only";
    if ((!w.empty() && !w.ends_in_e1()) || (!w2.empty() && !w2.ends_in_e1()) || n < 1) {
        r.status = "inadmissible-pair";
        r.note = "words must be empty or end in e1";
        return r;
    }
    const Word u = Word::e0_power(n - 1) * Word::e1();
    const int base = u.weight() + w.weight() + w2.weight();
    const int extra = 2;
    const int Nshift = std::max<int>(K + 1, base + extra);

    std::map<std::string, std::map<std::string, QComb>> defects;   // display -> variant -> LHS - RHS
    for (bool sign_n : {true, false})
        for (bool anti : {true, false}) {
            DmrVariant v{sign_n, anti};
            QComb lhs1, lhs2, lhs3;
            add_comb(lhs1, shuffle(u * w, w2), 1);
            add_comb(lhs2, shuffle(w, w2), 1);
            lhs3 = lhs1;

            Rational s1 = sign_n && n % 2 ? Rational(-1) : Rational(1);
            QComb rhs1 = shuffle_with(w, shft_star(u * w2, Nshift), s1);

            QComb rhs2;
            if (!w.empty()) {
                auto [k2, sw] = antipode_y(w, anti);
                add_series(rhs2, shft_star(sw * w2, Nshift), k2);
            } else {
                add_series(rhs2, shft_star(w2, Nshift), 1);
            }

            auto [k3, su] = antipode_y(u, anti);
            QComb rhs3 = shuffle_with(w, shft_star(su * w2, Nshift), k3);

            defects["first"][v.label()] = minus(lhs1, rhs1);
            defects["second"][v.label()] = minus(lhs2, rhs2);
            defects["third"][v.label()] = minus(lhs3, rhs3);
        }

    AdjointTable& T = shared_table(p, alpha, K);
    auto sigma_value = [&](const Word& x) {
        if (x.empty()) return PAdic::from_int(1, p, K);
        return HarCache::global().prime_power(p, alpha, Composition::from_word(x), K);
    };
    // x = e0^b e1 word(J) sits in Lambda-degree b + w(J)
    auto lambda_value = [&](const Word& x) {
        if (x.empty()) return PAdic::exact_zero(p);
        int b = x.leading_e0();
        return T.presented(b, Composition::from_word(x.suffix(x.weight() - b - 1)));
    };

    const int top_degree = base - 1 + extra;
    nlohmann::json sigma, lambda;
    std::map<std::string, std::vector<std::string>> passing;
    bool default_pass = true;
    long default_min = PAdic::kInf;
    const std::string def = DmrVariant{}.label();
    for (auto& [display, byvar] : defects) {
        for (auto& [label, comb] : byvar) {
            // Sigma side, words past the shift cutoff have valuation > Nshift >= K
            PAdic s = PAdic::exact_zero(p);
            for (auto& [x, c] : comb) s += sigma_value(x).mul_rational(c);
            long thr = std::min(K, s.precision());
            bool ok_sigma = s.is_exact_zero() || s.valuation() >= thr;
            if (label == def) default_min = std::min(default_min, s.valuation());
            sigma[display][label] = {{"defect_valuation", s.is_exact_zero() ? nlohmann::json("exact zero") : nlohmann::json(s.valuation())},
                                     {"threshold", thr}, {"pass", ok_sigma}};

            bool ok_lambda = true;
            nlohmann::json per = nlohmann::json::array();
            for (int deg = base - 1; deg <= top_degree; ++deg) {
                PAdic t = PAdic::exact_zero(p);
                for (auto& [x, c] : comb)
                    if (x.weight() == deg + 1) t += lambda_value(x).mul_rational(c);
                long th = std::min(K, t.precision());
                bool ok = t.is_exact_zero() || t.valuation() >= th;
                ok_lambda = ok_lambda && ok;
                if (label == def) default_min = std::min(default_min, t.valuation());
                per.push_back({{"degree", deg},
                               {"defect_valuation", t.is_exact_zero() ? nlohmann::json("exact zero") : nlohmann::json(t.valuation())},
                               {"pass", ok}});
            }
            lambda[display][label] = per;
            if (ok_sigma) passing["sigma:" + display].push_back(label);
            if (ok_lambda) passing["lambda:" + display].push_back(label);
            if (label == def) default_pass = default_pass && ok_sigma && ok_lambda;
        }
    }

    bool all_exact = true;
    for (auto& [display, byvar] : defects) all_exact = all_exact && byvar.at(def).empty();
    r.exact_zero = all_exact;
    r.defect_valuation = default_min;
    r.threshold = K;
    r.pass = default_pass;
    r.details = {{"sigma", sigma}, {"lambda", lambda}, {"passing", passing}};
    std::string note;
    for (auto& [k, labels] : passing) {
        note += (note.empty() ? "" : "; ") + k + " passes under";
        for (auto& l : labels) note += " " + l;
    }
    for (const char* side : {"sigma:", "lambda:"})
        for (const char* d : {"first", "second", "third"})
            if (!passing.count(std::string(side) + d)) note += (note.empty() ? "" : "; ") + std::string(side) + d + " fails under every variant";
    r.note = note;
    return r;
}

}  // namespace hf
