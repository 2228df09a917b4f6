#include "harmfrob/relations.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace hf {

Atom Atom::constant_of(const Rational& q) {
    Atom a;
    a.kind = Kind::constant;
    a.value = q;
    return a;
}

Atom Atom::har_at(long m, const Composition& I) {
    Atom a;
    a.kind = Kind::har_exact;
    a.m = m;
    a.index = I;
    return a;
}

Atom Atom::har_pa(long p, int alpha, const Composition& I) {
    Atom a;
    a.kind = Kind::har_prime;
    a.p = p;
    a.alpha = alpha;
    a.index = I;
    return a;
}

Atom Atom::adjoint_entry(long p, int alpha, int b, const Composition& I) {
    Atom a;
    a.kind = Kind::adjoint;
    a.p = p;
    a.alpha = alpha;
    a.b = b;
    a.index = I;
    return a;
}

Atom Atom::b_coefficient(std::vector<int> exponents, int b) {
    Atom a;
    a.kind = Kind::bcoeff;
    a.exponents = std::move(exponents);
    a.b = b;
    return a;
}

Atom Atom::zeta(long p, int alpha, int n) {
    Atom a;
    a.kind = Kind::zeta1;
    a.p = p;
    a.alpha = alpha;
    a.index = Composition{n};
    return a;
}

std::string Atom::str() const {
    switch (kind) {
    case Kind::constant: return value.str();
    case Kind::har_exact: return "har_" + std::to_string(m) + "(" + index.str() + ")";
    case Kind::har_prime:
        return "har_" + std::to_string(p) + "^" + std::to_string(alpha) + "(" + index.str() + ")";
    case Kind::adjoint:
        return "adj_" + std::to_string(p) + "^" + std::to_string(alpha) + "[" + std::to_string(b) + ";" + index.str() + "]";
    case Kind::bcoeff: {
        std::string s = "B_" + std::to_string(b) + "^{";
        for (size_t i = 0; i < exponents.size(); ++i) s += (i ? "," : "") + std::to_string(exponents[i]);
        return s + "}";
    }
    case Kind::zeta1: return "zeta_" + std::to_string(p) + "," + std::to_string(alpha) + "(" + index.str() + ")";
    }
    return "?";
}

AdjointTable& shared_table(long p, int alpha, long K) {
    static std::mutex mu;
    static std::map<std::tuple<long, int, long>, std::unique_ptr<AdjointTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& t = tables[{p, alpha, K}];
    if (!t) t = std::make_unique<AdjointTable>(p, alpha, K);
    return *t;
}

namespace {

Rational exact_value(const Atom& a) {
    switch (a.kind) {
    case Atom::Kind::constant: return a.value;
    case Atom::Kind::har_exact: return har(a.m, a.index);
    case Atom::Kind::bcoeff: return b_coeff(a.exponents, a.b);
    default: throw std::logic_error("atom is not exact: " + a.str());
    }
}

PAdic padic_value(const Atom& a, long p, long K) {
    if (a.exact()) return PAdic::from_rational(exact_value(a), p, K + 64);
    if (a.p != p) throw std::invalid_argument("atom over a different prime: " + a.str());
    switch (a.kind) {
    case Atom::Kind::har_prime: return HarCache::global().prime_power(p, a.alpha, a.index, K);
    case Atom::Kind::adjoint: return shared_table(p, a.alpha, K).entry(a.b, a.index);
    case Atom::Kind::zeta1: return zeta_depth1(p, a.alpha, a.index.parts.at(0), K).value;
    default: break;
    }
    throw std::logic_error("unhandled atom");
}

}  // namespace

Report run_identity(const IdentityCheck& c) {
    Report r;
    r.name = c.name;
    r.params = c.params;
    if (c.exact) {
        Rational sum = 0;
        for (auto& prod : c.plan) {
            Rational t = prod.coeff;
            for (auto& a : prod.atoms) t *= exact_value(a);
            sum += t;
        }
        r.exact_zero = sum.is_zero();
        if (!r.exact_zero && c.p > 0) r.defect_valuation = sum.vp(c.p);
        r.threshold = c.threshold;
        r.pass = r.exact_zero;
        if (!r.exact_zero) r.note = "nonzero defect " + sum.str();
        return r;
    }

    PAdic sum = PAdic::exact_zero(c.p);
    long min_prec = PAdic::kInf;
    for (auto& prod : c.plan) {
        PAdic t = PAdic::from_rational(prod.coeff, c.p, c.precision + 64);
        for (auto& a : prod.atoms) {
            PAdic v = padic_value(a, c.p, c.precision);
            if (!a.exact()) min_prec = std::min(min_prec, v.precision());
            t = t * v;
        }
        sum += t;
    }
    min_prec = std::min(min_prec, sum.precision());
    r.threshold = c.threshold;
    if (r.threshold > min_prec) {
        r.threshold = min_prec;
        r.note = "threshold lowered to the certified precision of the atoms";
    }
    r.exact_zero = sum.is_exact_zero();
    r.defect_valuation = r.exact_zero ? PAdic::kInf : sum.valuation();
    r.pass = r.exact_zero || r.defect_valuation >= r.threshold;
    return r;
}

IdentityCheck stuffle_har_identity(long m, const Composition& I, const Composition& J) {
    IdentityCheck c;
    c.name = "stuffle_har";
    c.params = {{"m", m}, {"I", I.str()}, {"J", J.str()}};
    c.exact = true;
    c.plan.push_back({Rational(1), {Atom::har_at(m, I), Atom::har_at(m, J)}});
    for (auto& [K, k] : stuffle(I, J)) c.plan.push_back({Rational(-k), {Atom::har_at(m, K)}});
    return c;
}

IdentityCheck bcoeff_quasi_shuffle_identity(int l1, int l2, int b) {
    IdentityCheck c;
    c.name = "bcoeff_quasi_shuffle";
    c.params = {{"l1", l1}, {"l2", l2}, {"b", b}};
    c.exact = true;
    // coefficients outside 1 <= b <= sum l + r vanish
    auto add = [&](const Rational& k, std::vector<int> e1, int b1, std::vector<int> e2 = {}, int b2 = 0) {
        auto in_range = [](const std::vector<int>& e, int bb) {
            int top = static_cast<int>(e.size());
            for (int l : e) top += l;
            return bb >= 1 && bb <= top;
        };
        if (!in_range(e1, b1)) return;
        Product prod{k, {Atom::b_coefficient(e1, b1)}};
        if (!e2.empty()) {
            if (!in_range(e2, b2)) return;
            prod.atoms.push_back(Atom::b_coefficient(e2, b2));
        }
        c.plan.push_back(prod);
    };
    for (int b1 = 1; b1 < b; ++b1) add(Rational(1), {l1}, b1, {l2}, b - b1);
    add(Rational(-1), {l2, l1}, b);
    add(Rational(-1), {l1, l2}, b);
    add(Rational(-1), {l1 + l2}, b);
    return c;
}

IdentityCheck adjoint_stuffle_identity(long p, int alpha, int b, int n1, int n2, long K) {
    IdentityCheck c;
    c.name = "adjoint_stuffle";
    c.params = {{"p", p}, {"alpha", alpha}, {"b", b}, {"n1", n1}, {"n2", n2}, {"K", K}};
    c.p = p;
    c.precision = K;
    c.threshold = K;
    c.plan.push_back({Rational(1), {Atom::adjoint_entry(p, alpha, b, Composition{n2, n1})}});
    c.plan.push_back({Rational(1), {Atom::adjoint_entry(p, alpha, b, Composition{n1, n2})}});
    c.plan.push_back({Rational(1), {Atom::adjoint_entry(p, alpha, b, Composition{n1 + n2})}});
    for (int b1 = 0; b1 <= b; ++b1)
        c.plan.push_back({Rational(-1), {Atom::adjoint_entry(p, alpha, b1, Composition{n1}),
                                         Atom::adjoint_entry(p, alpha, b - b1, Composition{n2})}});
    return c;
}

}  // namespace hf
