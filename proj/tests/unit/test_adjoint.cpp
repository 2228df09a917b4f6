#include "doctest.h"
#include "harmfrob/adjoint.hpp"
#include "testgen.hpp"

using namespace hf;

namespace {

PAdic direct_depth1_entry(long p, int alpha, int b, int n, long K) {
    // terms l >= b-1 have valuation >= n + l - 1 - v_p(b)
    PAdic total = PAdic::exact_zero(p);
    long vb = vp_int(BigInt(b), p);
    for (int l = b - 1; n + l - 1 - vb < K + 1; ++l) {
        Rational c = binom_general(-n, l) * b_coeff_closed(l, b);
        total += har_padic(ipow(p, alpha).get_si(), Composition{n + l}, p, K + 2 + vb).mul_rational(c);
    }
    return total;
}

Rational sign(long e) { return Rational(e % 2 ? -1 : 1); }

}  // namespace

TEST_CASE("zeta(2) vanishes") {
    for (long p : {5L, 7L, 11L, 13L})
        for (int alpha : {1, 2}) {
            auto z = zeta_depth1(p, alpha, 2, 10);
            CHECK(z.value.is_zero());
            CHECK(z.value.precision() >= 10);
            CHECK(z.truncation_l <= 60);
        }
    CHECK_THROWS(zeta_depth1(5, 1, 1, 5));
    auto z3 = zeta_depth1(5, 1, 3, 8);
    CHECK(z3.value.valuation() >= 2);
}

TEST_CASE("depth-one entries against zeta values") {
    for (long p : {5L, 7L, 11L}) {
        AdjointTable T(p, 1, 8);
        for (int n = 1; n <= 4; ++n) {
            CHECK(T.entry(0, Composition{n}).is_zero());
            for (int b = 1; b <= 4; ++b) {
                PAdic z = zeta_depth1(p, 1, n + b, 8).value.mul_rational(sign(n + b) * binom_general(-n, b));
                CHECK(defect_valuation(T.entry(b, Composition{n}), z) >= 8);
            }
            // har_{p}(n) = sum_b (-1)^{n+b} C(-n,b) zeta(n+b)
            PAdic sum = PAdic::exact_zero(p);
            for (int b = 1; b <= 12; ++b)
                sum += zeta_depth1(p, 1, n + b, 8).value.mul_rational(sign(n + b) * binom_general(-n, b));
            CHECK(defect_valuation(sum, har_padic(p, Composition{n}, p, 8)) >= 8);
        }
    }
}

TEST_CASE("depth-one entry matches the direct series") {
    for (long p : {5L, 7L})
        for (int alpha : {1, 2}) {
            AdjointTable T(p, alpha, 7);
            for (int n = 1; n <= 4; ++n)
                for (int b = 1; b <= 5; ++b) {
                    PAdic e = T.entry(b, Composition{n});
                    CHECK(e.precision() >= 7);
                    CHECK(defect_valuation(e, direct_depth1_entry(p, alpha, b, n, 7)) >= 7);
                }
        }
}

TEST_CASE("AHY congruence in depth one") {
    for (int n = 1; n <= 5; ++n)
        for (long p : primes_up_to(50)) {
            if (p <= n + 2) continue;
            PAdic lhs = har_padic(p, Composition{n}, p, n + 1);
            PAdic rhs = n == 1 ? PAdic::zero(p, n + 1) : zeta_depth1(p, 1, n, n + 1).value.mul_rational(Rational(1 + (n % 2 ? -1 : 1)));
            CHECK(defect_valuation(lhs, rhs) >= n + 1);
        }
}

TEST_CASE("resummation") {
    for (long p : {5L, 7L}) {
        AdjointTable T(p, 1, 10);
        for (auto& I : testgen::compositions_up_to(4, 2)) {
            if (I.empty()) continue;
            auto r = resummation_check(T, I, 6);
            CHECK(r.pass);
            // w + 7 - 1 lies in [p, p^2), so each level of depth costs one
            CHECK(r.threshold == std::min<long>(10, I.weight() + 6 - I.depth()));
            CHECK(resummation_check(T, I, 0).pass);
        }
    }
    AdjointTable T(5, 1, 6);
    auto r = resummation_check(T, Composition{2, 1}, 6);
    CHECK(r.defect_valuation >= 6);
}

TEST_CASE("adjoint quasi-shuffle in depth (1,1)") {
    for (long p : {5L, 7L}) {
        AdjointTable T(p, 1, 6);
        for (int n1 = 1; n1 <= 3; ++n1)
            for (int n2 = 1; n2 <= 3; ++n2)
                for (int b = 0; b <= 4; ++b) {
                    PAdic lhs = T.entry(b, Composition{n2, n1}) + T.entry(b, Composition{n1, n2}) + T.entry(b, Composition{n1 + n2});
                    PAdic rhs = PAdic::exact_zero(p);
                    for (int c = 0; c <= b; ++c) rhs += T.entry(c, Composition{n1}) * T.entry(b - c, Composition{n2});
                    CHECK(defect_valuation(lhs, rhs) >= 5);
                }
    }
}

TEST_CASE("weight cutoff and Lambda packaging") {
    CHECK_THROWS_AS(adjoint_pmzv(5, 1, 4, Composition{2, 1}, 6, 6), CutoffError);
    AdjointTable T(5, 1, 6, 12);
    PAdic e = T.entry(2, Composition{2, 1});
    CHECK(e.precision() <= 6);
    auto L = lambda_adjoint(T, Composition{2, 1}, 8);
    REQUIRE(L.coeffs.size() == 6);
    CHECK(L.coeffs[0] == T.entry(0, Composition{2, 1}));
    CHECK(L.coeffs[2] == e);
    auto L1 = lambda_adjoint(T, Composition{3}, 6);
    CHECK(L1.coeffs[1] == -T.entry(1, Composition{3}));
    CHECK_THROWS_AS(lambda_adjoint(T, Composition{3}, 2), CutoffError);
}

TEST_CASE("harmonic action") {
    const int N = 9, D = 3;
    const long K = 8;
    for (long p : {3L, 5L}) {
        AdjointTable T(p, 1, K);
        auto g = adjoint_series(T, N, D);

        // the unit acts trivially
        auto unit = NcSeries<PAdic>::monomial(g.ctx(), N, Word::e1(), PAdic::from_int(1, p, K), D);
        auto h2 = harmonic_series(p, K, N, D, [&](const Composition& I) { return PAdic::from_rational(har(2, I), p, K); });
        for (auto& [I, v] : circ_har_z(unit, h2, 2)) {
            CHECK(v.precision() == N - 2);
            CHECK(defect_valuation(v, PAdic::from_rational(har(2, I), p, K)) >= N - 2);
        }

        for (long m : {2L, p - 1, p}) {
            auto h = harmonic_series(p, K, N, D, [&](const Composition& I) { return PAdic::from_rational(har(m, I), p, K + 10); });
            for (auto& [I, v] : circ_har_z(g, h, m)) {
                // deeper indices are reported by the relations harness, not asserted
                if (I.depth() != 1) continue;
                INFO("p=" << p << " m=" << m << " I=" << I.str());
                CHECK(v.precision() >= 2);
                CHECK(defect_valuation(v, har_padic(p * m, I, p, K)) >= v.precision());
            }
        }

        // m = 1: har_1 vanishes off the empty index and the action is resummation
        auto h1 = harmonic_series(p, K, N, D, [&](const Composition&) { return PAdic::exact_zero(p); });
        auto first = circ_har_z(g, h1, 1);
        for (auto& [I, v] : first) CHECK(defect_valuation(v, har_padic(p, I, p, K)) >= v.precision());

        // acting again on the result gives the sums up to p^2
        auto hp = harmonic_series(p, K, N, D, [&](const Composition& I) {
            auto it = first.find(I);
            return it == first.end() ? PAdic::zero(p, 0) : it->second;
        });
        auto second = circ_har_z(g, hp, p, 3);
        for (auto& [I, v] : second) {
            if (I.depth() != 1) continue;
            long cert = v.precision();
            CHECK(cert >= 4);
            CHECK(defect_valuation(v, har_padic(p * p, I, p, K)) >= cert);
            if (I.depth() == 1) CHECK(defect_valuation(v, iterate_depth1(p, 1, 2, I.parts[0], K)) >= cert);
        }
    }
}
