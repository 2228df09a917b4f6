#pragma once
// Random series generators shared by the unit tests.
#include "harmfrob/words.hpp"

#include <functional>
#include <random>

namespace hf::testgen {

inline std::vector<Word> all_words(int maxlen) {
    std::vector<Word> out{Word()};
    for (int n = 1; n <= maxlen; ++n)
        for (uint64_t b = 0; b < (1ull << n); ++b) {
            std::string s;
            for (int i = n - 1; i >= 0; --i) s.push_back(static_cast<char>('0' + ((b >> i) & 1)));
            out.push_back(Word::parse(s));
        }
    return out;
}

// 1 + sparse small-integer coefficients
inline NcSeries<Rational> random_unipotent(std::mt19937_64& rng, int N, double density = 0.5) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<long> c(-3, 3);
    auto f = NcSeries<Rational>::one(RingCtx<Rational>{}, N);
    for (auto& w : all_words(N)) {
        if (w.empty() || u(rng) > density) continue;
        f.set(w, Rational(c(rng), 1 + static_cast<long>(u(rng) * 3)));
    }
    return f;
}

template <class R>
NcSeries<R> bracket(const NcSeries<R>& a, const NcSeries<R>& b) { return a * b - b * a; }

// exp of a random combination of iterated brackets of e0 and e1; every
// coefficient gets an extra factor scale^weight
template <class R>
NcSeries<R> random_grouplike(std::mt19937_64& rng, RingCtx<R> ctx, int N, const Rational& scale = 1) {
    std::uniform_int_distribution<long> c(-4, 4);
    auto gen = [&](int letter) {
        return NcSeries<R>::monomial(ctx, N, letter ? Word::e1() : Word::e0(), ctx.from(Rational(1)));
    };
    std::vector<NcSeries<R>> layer{gen(0), gen(1)};
    NcSeries<R> lie(ctx, N);
    for (auto& x : layer) lie += x.scaled(ctx.from(Rational(c(rng)) * scale));
    for (int w = 2; w <= N; ++w) {
        std::vector<NcSeries<R>> next;
        for (auto& x : layer) {
            for (int letter = 0; letter < 2; ++letter) {
                auto y = bracket(gen(letter), x);
                if (y.size() == 0) continue;
                next.push_back(y);
                lie += y.scaled(ctx.from(Rational(c(rng)) * scale.pow(w)));
            }
        }
        if (next.size() > 6) next.resize(6);
        layer = std::move(next);
    }
    return series_exp(lie);
}

// all compositions of weight <= wmax (including the empty one) with depth <= dmax
inline std::vector<Composition> compositions_up_to(int wmax, int dmax = 64) {
    std::vector<Composition> out{Composition()};
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& cur, int left) {
        if (static_cast<int>(cur.size()) >= dmax) return;
        for (int n = 1; n <= left; ++n) {
            cur.push_back(n);
            out.push_back(Composition(cur));
            rec(cur, left - n);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    rec(cur, wmax);
    return out;
}

}  // namespace hf::testgen
