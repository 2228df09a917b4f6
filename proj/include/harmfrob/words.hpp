#pragma once

#include "harmfrob/arith.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hf {

// Word over {e0, e1}. Letters are packed most significant first, so for
// words of equal length the integer order is the lexicographic order with
// e0 < e1.
class Word {
public:
    Word() = default;
    static Word e0() { return Word(0, 1); }
    static Word e1() { return Word(1, 1); }
    static Word e0_power(int k);
    static Word parse(const std::string& s);   // "0101", "" is the empty word

    int weight() const { return len_; }
    int depth() const { return std::popcount(bits_); }
    bool empty() const { return len_ == 0; }
    int letter(int i) const { return static_cast<int>((bits_ >> (len_ - 1 - i)) & 1u); }
    bool ends_in_e1() const { return len_ > 0 && (bits_ & 1u); }
    int leading_e0() const;

    Word prefix(int k) const { return Word(bits_ >> (len_ - k), k); }
    Word suffix(int k) const { return Word(k == 0 ? 0 : bits_ & ((k == 64) ? ~0ull : ((1ull << k) - 1)), k); }
    Word reversed() const;
    std::string str() const;
    uint64_t bits() const { return bits_; }

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word& a, const Word& b) { return a.len_ == b.len_ && a.bits_ == b.bits_; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    // canonical order: weight, then depth, then lexicographic
    friend bool operator<(const Word& a, const Word& b);

private:
    Word(uint64_t bits, int len) : bits_(bits), len_(static_cast<uint8_t>(len)) {}
    uint64_t bits_ = 0;
    uint8_t len_ = 0;
};

// (n_d, ..., n_1): parts[0] is the outermost index n_d.
struct Composition {
    std::vector<int> parts;

    Composition() = default;
    Composition(std::initializer_list<int> l) : parts(l) {}
    explicit Composition(std::vector<int> p) : parts(std::move(p)) {}

    static Composition parse(const std::string& s);   // "3,1"; "" is empty
    static Composition from_word(const Word& w);       // throws unless w ends in e1

    int weight() const;
    int depth() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }
    Word word() const;
    std::string str() const;

    friend bool operator==(const Composition& a, const Composition& b) { return a.parts == b.parts; }
    friend bool operator!=(const Composition& a, const Composition& b) { return a.parts != b.parts; }
    friend bool operator<(const Composition& a, const Composition& b);
};

using WordComb = std::map<Word, long>;
using CompComb = std::map<Composition, long>;

WordComb shuffle(const Word& a, const Word& b);
CompComb stuffle(const Composition& a, const Composition& b);
std::pair<int, Word> antipode(const Word& w);
std::pair<int, Composition> s_y(const Composition& I);

// ---------------------------------------------------------------------------
// Coefficient rings

template <class R> struct RingCtx;

template <> struct RingCtx<Rational> {
    Rational from(const Rational& q) const { return q; }
    Rational zero() const { return Rational(0); }
    static bool exact_zero(const Rational& x) { return x.is_zero(); }
    static Rational inv(const Rational& x) { return x.inverse(); }
    friend bool operator==(const RingCtx&, const RingCtx&) { return true; }
};

template <> struct RingCtx<PAdic> {
    long p = 2;
    long prec = 20;
    PAdic from(const Rational& q) const { return PAdic::from_rational(q, p, prec); }
    PAdic zero() const { return PAdic::exact_zero(p); }
    static bool exact_zero(const PAdic& x) { return x.is_exact_zero(); }
    static PAdic inv(const PAdic& x) { return x.inverse(); }
    friend bool operator==(const RingCtx& a, const RingCtx& b) { return a.p == b.p; }
};

inline PAdic scale_by(const PAdic& x, const Rational& q) { return x.mul_rational(q); }
inline Rational scale_by(const Rational& x, const Rational& q) { return x * q; }
inline bool is_one(const Rational& x) { return x == Rational(1); }
inline bool is_one(const PAdic& x) { return !x.is_zero() && (x - PAdic::from_int(1, x.prime(), x.precision())).is_zero(); }

struct CutoffError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Truncated noncommutative series. Only words within the weight cutoff (and
// depth cutoff if set) are stored; exact zeros are never stored.
template <class R>
class NcSeries {
public:
    using Ctx = RingCtx<R>;
    using Map = std::map<Word, R>;

    NcSeries() = default;
    NcSeries(Ctx ctx, int weight_cutoff, std::optional<int> depth_cutoff = std::nullopt)
        : ctx_(ctx), N_(weight_cutoff), D_(depth_cutoff) {}

    static NcSeries one(Ctx ctx, int N, std::optional<int> D = std::nullopt) {
        NcSeries s(ctx, N, D);
        s.set(Word(), ctx.from(Rational(1)));
        return s;
    }
    static NcSeries monomial(Ctx ctx, int N, const Word& w, const R& c, std::optional<int> D = std::nullopt) {
        NcSeries s(ctx, N, D);
        s.set(w, c);
        return s;
    }

    const Ctx& ctx() const { return ctx_; }
    int weight_cutoff() const { return N_; }
    std::optional<int> depth_cutoff() const { return D_; }
    bool admits(const Word& w) const { return w.weight() <= N_ && (!D_ || w.depth() <= *D_); }

    R coeff(const Word& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? ctx_.zero() : it->second;
    }
    bool contains(const Word& w) const { return c_.count(w) != 0; }
    void set(const Word& w, const R& v) {
        if (!admits(w)) return;
        if (Ctx::exact_zero(v)) c_.erase(w);
        else c_[w] = v;
    }
    void add_to(const Word& w, const R& v) {
        if (!admits(w) || Ctx::exact_zero(v)) return;
        auto it = c_.find(w);
        if (it == c_.end()) c_.emplace(w, v);
        else {
            it->second = it->second + v;
            if (Ctx::exact_zero(it->second)) c_.erase(it);
        }
    }
    const Map& terms() const { return c_; }
    size_t size() const { return c_.size(); }

    NcSeries& operator+=(const NcSeries& o) {
        for (auto& [w, v] : o.c_) add_to(w, v);
        return *this;
    }
    NcSeries& operator-=(const NcSeries& o) {
        for (auto& [w, v] : o.c_) add_to(w, -v);
        return *this;
    }
    friend NcSeries operator+(NcSeries a, const NcSeries& b) { a += b; return a; }
    friend NcSeries operator-(NcSeries a, const NcSeries& b) { a -= b; return a; }

    NcSeries scaled(const R& s) const {
        NcSeries r(ctx_, N_, D_);
        for (auto& [w, v] : c_) r.set(w, v * s);
        return r;
    }
    NcSeries scaled_q(const Rational& s) const {
        NcSeries r(ctx_, N_, D_);
        for (auto& [w, v] : c_) r.set(w, scale_by(v, s));
        return r;
    }

private:
    Ctx ctx_{};
    int N_ = 0;
    std::optional<int> D_;
    Map c_;
};

template <class R>
void check_compatible(const NcSeries<R>& f, const NcSeries<R>& g) {
    if (f.weight_cutoff() != g.weight_cutoff() || f.depth_cutoff() != g.depth_cutoff() || !(f.ctx() == g.ctx()))
        throw CutoffError("series with different rings or cutoffs");
}

template <class R>
NcSeries<R> series_mul(const NcSeries<R>& f, const NcSeries<R>& g) {
    check_compatible(f, g);
    NcSeries<R> r(f.ctx(), f.weight_cutoff(), f.depth_cutoff());
    const int N = f.weight_cutoff();
    for (auto& [u, a] : f.terms()) {
        for (auto& [v, b] : g.terms()) {
            if (u.weight() + v.weight() > N) continue;
            r.add_to(u * v, a * b);
        }
    }
    return r;
}

template <class R>
NcSeries<R> operator*(const NcSeries<R>& f, const NcSeries<R>& g) { return series_mul(f, g); }

template <class R>
NcSeries<R> series_inverse(const NcSeries<R>& f) {
    auto c0 = f.coeff(Word());
    if (RingCtx<R>::exact_zero(c0)) throw std::domain_error("non-invertible constant term");
    R c0inv = RingCtx<R>::inv(c0);
    // f = c0 (1 - x)  =>  f^{-1} = (sum x^k) c0^{-1}
    NcSeries<R> x(f.ctx(), f.weight_cutoff(), f.depth_cutoff());
    for (auto& [w, v] : f.terms())
        if (!w.empty()) x.set(w, -(v * c0inv));
    auto one = NcSeries<R>::one(f.ctx(), f.weight_cutoff(), f.depth_cutoff());
    NcSeries<R> acc = one, power = one;
    for (int k = 1; k <= f.weight_cutoff(); ++k) {
        power = power * x;
        if (power.size() == 0) break;
        acc += power;
    }
    return acc.scaled(c0inv);
}

// e0 -> e0, e1 -> g
template <class R>
NcSeries<R> substitute_e1(const NcSeries<R>& f, const NcSeries<R>& g) {
    check_compatible(f, g);
    if (g.contains(Word())) throw std::invalid_argument("substitution series has a constant term");
    const int N = f.weight_cutoff();
    std::map<Word, NcSeries<R>> memo;   // image of each suffix
    auto one = NcSeries<R>::one(f.ctx(), N, f.depth_cutoff());
    memo.emplace(Word(), one);
    auto image = [&](const Word& w) -> const NcSeries<R>& {
        // build images of suffixes of increasing length
        for (int k = 1; k <= w.weight(); ++k) {
            Word s = w.suffix(k);
            if (memo.count(s)) continue;
            const NcSeries<R>& rest = memo.at(w.suffix(k - 1));
            NcSeries<R> img(f.ctx(), N, f.depth_cutoff());
            if (s.letter(0) == 0) {
                for (auto& [u, c] : rest.terms()) img.set(Word::e0() * u, c);
            } else {
                img = g * rest;
            }
            memo.emplace(s, std::move(img));
        }
        return memo.at(w);
    };
    NcSeries<R> r(f.ctx(), N, f.depth_cutoff());
    for (auto& [w, c] : f.terms()) {
        const auto& img = image(w);
        for (auto& [u, d] : img.terms()) r.add_to(u, c * d);
    }
    return r;
}

template <class R>
NcSeries<R> adjoint_e1(const NcSeries<R>& g) {
    auto e1 = NcSeries<R>::monomial(g.ctx(), g.weight_cutoff(), Word::e1(), g.ctx().from(Rational(1)), g.depth_cutoff());
    return series_inverse(g) * e1 * g;
}

template <class R>
void require_unit_constant(const NcSeries<R>& f) {
    auto c = f.coeff(Word());
    if (!is_one(c))
        throw std::invalid_argument("series constant term must be 1");
}

// g(e0,e1) . f(e0, g^{-1} e1 g)
template <class R>
NcSeries<R> ihara(const NcSeries<R>& g, const NcSeries<R>& f) {
    require_unit_constant(g);
    require_unit_constant(f);
    return g * substitute_e1(f, adjoint_e1(g));
}

// h with ihara(g, h) = 1, solved weight by weight
template <class R>
NcSeries<R> ihara_inverse(const NcSeries<R>& g) {
    require_unit_constant(g);
    const int N = g.weight_cutoff();
    auto h = NcSeries<R>::one(g.ctx(), N, g.depth_cutoff());
    auto ad = adjoint_e1(g);
    for (int n = 1; n <= N; ++n) {
        auto prod = g * substitute_e1(h, ad);
        for (auto& [w, c] : prod.terms())
            if (w.weight() == n) h.add_to(w, -c);
    }
    return h;
}

template <class R>
NcSeries<R> tau_scale(const R& lambda, const NcSeries<R>& f) {
    NcSeries<R> r(f.ctx(), f.weight_cutoff(), f.depth_cutoff());
    std::vector<R> pw{f.ctx().from(Rational(1))};
    for (int k = 1; k <= f.weight_cutoff(); ++k) pw.push_back(pw.back() * lambda);
    for (auto& [w, c] : f.terms()) r.set(w, c * pw[static_cast<size_t>(w.weight())]);
    return r;
}

template <class R>
NcSeries<R> pr_n(int n, const NcSeries<R>& f) {
    NcSeries<R> r(f.ctx(), f.weight_cutoff(), f.depth_cutoff());
    for (auto& [w, c] : f.terms())
        if (w.weight() == n) r.set(w, c);
    return r;
}

// exp(x) for x without constant term
template <class R>
NcSeries<R> series_exp(const NcSeries<R>& x) {
    if (x.contains(Word())) throw std::invalid_argument("exp of a series with constant term");
    auto acc = NcSeries<R>::one(x.ctx(), x.weight_cutoff(), x.depth_cutoff());
    auto term = acc;
    for (int k = 1; k <= x.weight_cutoff(); ++k) {
        term = (term * x).scaled_q(Rational(1, k));
        acc += term;
    }
    return acc;
}

// linear extension of a word combination through f
template <class R>
R evaluate_comb(const NcSeries<R>& f, const WordComb& c) {
    R acc = f.ctx().zero();
    for (auto& [w, k] : c) acc = acc + scale_by(f.coeff(w), Rational(k));
    return acc;
}

// block e0^{n-1} e1 -> sum_k C(-n,k) e0^{n-1+k} e1, truncated at weight N
NcSeries<Rational> shft_star(const Word& w, int N);
NcSeries<Rational> shft_star(const NcSeries<Rational>& f);

// ---------------------------------------------------------------------------
// p-adic size of series

struct ValuationProfile {
    int N = 0;
    int D = 0;
    std::vector<long> v;   // (N+1) x (D+1), PAdic::kInf when nothing stored

    ValuationProfile(int n, int d) : N(n), D(d), v(static_cast<size_t>((n + 1) * (d + 1)), PAdic::kInf) {}
    long at(int s, int d) const { return v[static_cast<size_t>(s * (D + 1) + d)]; }
    long& at(int s, int d) { return v[static_cast<size_t>(s * (D + 1) + d)]; }
};

ValuationProfile valuation_profile(const NcSeries<PAdic>& f);
ValuationProfile valuation_profile(const NcSeries<Rational>& f, long p);
// min over (s1+s2, d1+d2) = (s, d) of a(s1,d1) + b(s2,d2)
ValuationProfile minplus_convolution(const ValuationProfile& a, const ValuationProfile& b);
// smallest profile P with P(0,0) = 0 that dominates a and is closed under min-plus products
ValuationProfile minplus_closure(const ValuationProfile& a);

struct NotStabilized : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// f[e0^L w] for the largest admissible L; the certified precision is capped by
// the valuations of the last two increments.
PAdic limit_e0(const NcSeries<PAdic>& f, const Word& w, long min_precision = 1);

}  // namespace hf
