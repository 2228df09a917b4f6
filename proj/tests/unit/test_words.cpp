#include "doctest.h"
#include "harmfrob/words.hpp"
#include "testgen.hpp"

#include <functional>

using namespace hf;
using namespace hf::testgen;

namespace {

NcSeries<Rational> S(int N, std::initializer_list<std::pair<const char*, long>> t) {
    NcSeries<Rational> f(RingCtx<Rational>{}, N);
    for (auto& [w, c] : t) f.add_to(Word::parse(w), Rational(c));
    return f;
}

bool same(const NcSeries<Rational>& a, const NcSeries<Rational>& b) { return (a - b).size() == 0; }

// interleavings by choosing which positions belong to the first word
WordComb shuffle_by_positions(const Word& a, const Word& b) {
    WordComb out;
    int n = a.weight() + b.weight();
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        if (std::popcount(mask) != a.weight()) continue;
        std::string s;
        int ia = 0, ib = 0;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) s.push_back(static_cast<char>('0' + a.letter(ia++)));
            else s.push_back(static_cast<char>('0' + b.letter(ib++)));
        }
        out[Word::parse(s)] += 1;
    }
    return out;
}

// quasi-shuffles enumerated front to back
void stuffle_front(const std::vector<int>& a, size_t i, const std::vector<int>& b, size_t j, std::vector<int>& cur,
                   CompComb& out) {
    if (i == a.size() && j == b.size()) {
        out[Composition(cur)] += 1;
        return;
    }
    if (i < a.size()) {
        cur.push_back(a[i]);
        stuffle_front(a, i + 1, b, j, cur, out);
        cur.pop_back();
    }
    if (j < b.size()) {
        cur.push_back(b[j]);
        stuffle_front(a, i, b, j + 1, cur, out);
        cur.pop_back();
    }
    if (i < a.size() && j < b.size()) {
        cur.push_back(a[i] + b[j]);
        stuffle_front(a, i + 1, b, j + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("words and compositions") {
    Word w = Word::parse("0101");
    CHECK(w.weight() == 4);
    CHECK(w.depth() == 2);
    CHECK(w.str() == "0101");
    CHECK(Word().weight() == 0);
    CHECK(Word().depth() == 0);
    auto I = Composition::from_word(w);
    CHECK(I.str() == "2,2");
    CHECK(Composition{3, 1}.word().str() == "0011");
    CHECK_THROWS(Composition::from_word(Word::parse("10")));
    CHECK_THROWS(Composition::parse("1,,2"));
    CHECK_THROWS(Composition::parse("0"));
    for (auto& c : compositions_up_to(7)) CHECK(Composition::from_word(c.word()) == c);
    // canonical order: weight, depth, lexicographic
    CHECK(Word::parse("11") < Word::parse("000"));
    CHECK(Word::parse("001") < Word::parse("011"));
    CHECK(Word::parse("010") < Word::parse("100"));
}

TEST_CASE("shuffle examples") {
    Word w = Word::parse("0110");
    CHECK(shuffle(w, Word()) == WordComb{{w, 1}});
    CHECK(shuffle(Word::e0(), Word::e1()) == WordComb{{Word::parse("01"), 1}, {Word::parse("10"), 1}});
    CHECK(shuffle(Word::e1(), Word::e1()) == WordComb{{Word::parse("11"), 2}});
}

TEST_CASE("shuffle against exhaustive enumeration, commutative and associative") {
    auto words = all_words(4);
    for (auto& a : words)
        for (auto& b : words) {
            if (a.weight() + b.weight() > 8) continue;
            auto s = shuffle(a, b);
            CHECK(s == shuffle_by_positions(a, b));
            CHECK(s == shuffle(b, a));
            long total = 0;
            for (auto& [u, k] : s) total += k;
            CHECK(Rational(total) == binom_general(a.weight() + b.weight(), a.weight()));
        }
    auto small = all_words(2);
    for (auto& a : small)
        for (auto& b : small)
            for (auto& c : small) {
                WordComb left, right;
                for (auto& [u, k] : shuffle(a, b))
                    for (auto& [x, l] : shuffle(u, c)) left[x] += k * l;
                for (auto& [u, k] : shuffle(b, c))
                    for (auto& [x, l] : shuffle(a, u)) right[x] += k * l;
                CHECK(left == right);
            }
}

TEST_CASE("stuffle examples and enumeration") {
    CHECK(stuffle(Composition{3}, Composition{5}) ==
          CompComb{{Composition{8}, 1}, {Composition{3, 5}, 1}, {Composition{5, 3}, 1}});
    CHECK(stuffle(Composition{2, 1}, Composition()) == CompComb{{Composition{2, 1}, 1}});
    CHECK(stuffle(Composition{1}, Composition{1}) == CompComb{{Composition{1, 1}, 2}, {Composition{2}, 1}});
    auto comps = compositions_up_to(8);
    for (auto& a : comps)
        for (auto& b : comps) {
            if (a.weight() + b.weight() > 8) continue;
            CompComb oracle;
            std::vector<int> cur;
            stuffle_front(a.parts, 0, b.parts, 0, cur, oracle);
            auto s = stuffle(a, b);
            CHECK(s == oracle);
            CHECK(s == stuffle(b, a));
        }
    auto small = compositions_up_to(3);
    for (auto& a : small)
        for (auto& b : small)
            for (auto& c : small) {
                CompComb left, right;
                for (auto& [u, k] : stuffle(a, b))
                    for (auto& [x, l] : stuffle(u, c)) left[x] += k * l;
                for (auto& [u, k] : stuffle(b, c))
                    for (auto& [x, l] : stuffle(a, u)) right[x] += k * l;
                CHECK(left == right);
            }
}

TEST_CASE("antipode and S_Y") {
    CHECK(antipode(Word()) == std::pair<int, Word>{1, Word()});
    CHECK(antipode(Word::parse("01")) == std::pair<int, Word>{1, Word::parse("10")});
    CHECK(antipode(Word::e1()) == std::pair<int, Word>{-1, Word::e1()});
    CHECK(s_y(Composition{3}) == std::pair<int, Composition>{-1, Composition{3}});
    CHECK(s_y(Composition{3, 1}) == std::pair<int, Composition>{1, Composition{1, 3}});
    for (auto& c : compositions_up_to(5)) {
        auto [s1, c1] = s_y(c);
        auto [s2, c2] = s_y(c1);
        CHECK(s1 * s2 == 1);
        CHECK(c2 == c);
    }
}

TEST_CASE("series product and inverse") {
    auto f = S(5, {{"", 1}, {"01", 2}, {"1", -1}});
    auto one = NcSeries<Rational>::one(RingCtx<Rational>{}, 5);
    CHECK(same(one * f, f));
    auto g = S(5, {{"", 1}, {"0", 1}});
    auto gi = series_inverse(g);
    for (int k = 0; k <= 5; ++k) CHECK(gi.coeff(Word::e0_power(k)) == Rational(k % 2 ? -1 : 1));
    CHECK(gi.size() == 6);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        auto h = random_unipotent(rng, 5);
        CHECK(same(h * series_inverse(h), one));
        CHECK(same(series_inverse(h) * h, one));
    }
    CHECK_THROWS(series_inverse(S(3, {{"1", 1}})));
}

TEST_CASE("substitution of e1") {
    std::mt19937_64 rng(5);
    auto f = random_unipotent(rng, 5);
    auto e1 = S(5, {{"1", 1}});
    CHECK(same(substitute_e1(f, e1), f));
    auto g = S(5, {{"1", 2}, {"01", 1}, {"11", -1}});
    CHECK(same(substitute_e1(S(5, {{"11", 1}}), g), g * g));
    CHECK(same(substitute_e1(S(3, {{"01", 1}}), S(3, {{"1", 1}, {"01", 1}})), S(3, {{"01", 1}, {"001", 1}})));
    CHECK_THROWS(substitute_e1(f, S(5, {{"", 1}, {"1", 1}})));
}

TEST_CASE("adjoint of e1") {
    auto one = NcSeries<Rational>::one(RingCtx<Rational>{}, 4);
    CHECK(same(adjoint_e1(one), S(4, {{"1", 1}})));
    auto a = adjoint_e1(S(3, {{"", 1}, {"0", 1}}));
    CHECK(same(a, S(3, {{"1", 1}, {"10", 1}, {"01", -1}, {"010", -1}, {"001", 1}})));
    std::mt19937_64 rng(9);
    auto b = adjoint_e1(random_unipotent(rng, 5));
    for (auto& [w, c] : b.terms()) CHECK(w.depth() >= 1);
}

TEST_CASE("Ihara product examples") {
    std::mt19937_64 rng(11);
    auto f = random_unipotent(rng, 5);
    auto one = NcSeries<Rational>::one(RingCtx<Rational>{}, 5);
    CHECK(same(ihara(one, f), f));
    CHECK(same(ihara(f, one), f));
    auto g = S(3, {{"", 1}, {"01", 7}});
    auto h = S(3, {{"", 1}, {"1", 1}});
    CHECK(same(ihara(g, h), S(3, {{"", 1}, {"1", 1}, {"01", 7}, {"101", 7}})));
}

TEST_CASE("Ihara group law, inverse and adjoint intertwiner") {
    std::mt19937_64 rng(2024);
    auto one = NcSeries<Rational>::one(RingCtx<Rational>{}, 5);
    for (int t = 0; t < 8; ++t) {
        auto a = random_unipotent(rng, 5, 0.3), b = random_unipotent(rng, 5, 0.3), c = random_unipotent(rng, 5, 0.3);
        CHECK(same(ihara(ihara(a, b), c), ihara(a, ihara(b, c))));
        auto ai = ihara_inverse(a);
        CHECK(same(ihara(a, ai), one));
        CHECK(same(ihara(ai, a), one));
        CHECK(same(adjoint_e1(ihara(a, b)), substitute_e1(adjoint_e1(b), adjoint_e1(a))));
    }
}

TEST_CASE("tau scaling and weight projections") {
    std::mt19937_64 rng(13);
    auto f = random_unipotent(rng, 5);
    CHECK(same(tau_scale(Rational(1), f), f));
    auto t = tau_scale(Rational(3), S(4, {{"01", 5}}));
    CHECK(t.coeff(Word::parse("01")) == Rational(45));
    CHECK(same(tau_scale(Rational(2), tau_scale(Rational(5), f)), tau_scale(Rational(10), f)));
    NcSeries<Rational> sum(RingCtx<Rational>{}, 5);
    for (int n = 0; n <= 5; ++n) sum += pr_n(n, f);
    CHECK(same(sum, f));
    CHECK(same(pr_n(0, f), S(5, {{"", 1}})));
    CHECK(same(pr_n(2, S(4, {{"", 1}, {"01", 1}, {"1", 1}})), S(4, {{"01", 1}})));
}

TEST_CASE("shft_star") {
    CHECK(same(shft_star(Word(), 4), NcSeries<Rational>::one(RingCtx<Rational>{}, 4)));
    auto s1 = shft_star(Word::e1(), 5);
    for (int k = 0; k < 5; ++k) CHECK(s1.coeff(Word::e0_power(k) * Word::e1()) == Rational(k % 2 ? -1 : 1));
    CHECK(s1.size() == 5);
    auto s2 = shft_star(Word::parse("01"), 5);
    CHECK(s2.coeff(Word::parse("01")) == Rational(1));
    CHECK(s2.coeff(Word::parse("001")) == Rational(-2));
    CHECK(s2.coeff(Word::parse("0001")) == Rational(3));
    CHECK(s2.coeff(Word::parse("00001")) == Rational(-4));
    CHECK_THROWS(shft_star(Word::parse("10"), 4));
}

TEST_CASE("shuffle equation separates grouplike series from perturbations") {
    std::mt19937_64 rng(17);
    auto words = all_words(3);
    for (int t = 0; t < 5; ++t) {
        auto g = random_grouplike(rng, RingCtx<Rational>{}, 6);
        auto bad = g;
        bad.add_to(Word::parse("01"), Rational(1));
        bool good_ok = true, bad_ok = true;
        for (auto& a : words)
            for (auto& b : words) {
                Rational lhs = g.coeff(a) * g.coeff(b);
                if (lhs != evaluate_comb(g, shuffle(a, b))) good_ok = false;
                if (bad.coeff(a) * bad.coeff(b) != evaluate_comb(bad, shuffle(a, b))) bad_ok = false;
            }
        CHECK(good_ok);
        CHECK_FALSE(bad_ok);
    }
}

TEST_CASE("valuation profiles") {
    RingCtx<PAdic> ctx{5, 20};
    NcSeries<PAdic> z(ctx, 4);
    auto P = valuation_profile(z);
    for (long v : P.v) CHECK(v == PAdic::kInf);
    NcSeries<PAdic> f(ctx, 4);
    f.set(Word::e1(), ctx.from(Rational(5)));
    auto Pf = valuation_profile(f);
    CHECK(Pf.at(1, 1) == 1);
    CHECK(Pf.at(1, 0) == PAdic::kInf);
    CHECK(Pf.at(2, 1) == PAdic::kInf);
    std::mt19937_64 rng(19);
    for (int t = 0; t < 10; ++t) {
        auto a = random_unipotent(rng, 4), b = random_unipotent(rng, 4);
        auto Pa = valuation_profile(a, 3), Pb = valuation_profile(b, 3), Ps = valuation_profile(a + b, 3);
        for (size_t i = 0; i < Ps.v.size(); ++i) CHECK(Ps.v[i] >= std::min(Pa.v[i], Pb.v[i]));
    }
}

TEST_CASE("limit along leading e0 blocks") {
    RingCtx<PAdic> ctx{5, 30};
    const int N = 8;
    Word w = Word::parse("01");
    NcSeries<PAdic> c(ctx, N), g(ctx, N), d(ctx, N);
    for (int l = 0; l + 2 <= N; ++l) {
        c.set(Word::e0_power(l) * w, ctx.from(Rational(7, 3)));
        g.set(Word::e0_power(l) * w, ctx.from(Rational(5).pow(l)));
        d.set(Word::e0_power(l) * w, ctx.from(Rational(5).pow(-l)));
    }
    auto lc = limit_e0(c, w, 10);
    CHECK(lc.precision() == 30);
    CHECK(lc.to_rational() == PAdic::from_rational(Rational(7, 3), 5, 30).to_rational());
    auto lg = limit_e0(g, w, 3);
    CHECK(lg.is_zero());
    CHECK(lg.precision() >= N - 2 - 2);
    CHECK_THROWS_AS(limit_e0(d, w, 1), NotStabilized);
}
