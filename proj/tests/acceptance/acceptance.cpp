// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "harmfrob/relations.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hf;
namespace fs = std::filesystem;

#ifndef HARMFROB_EXE
#define HARMFROB_EXE "harmfrob"
#endif

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<Composition> compositions(int wmax, int dmax = 64) {
    std::vector<Composition> out{Composition()};
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i].depth() >= dmax) continue;
        for (int n = 1; out[i].weight() + n <= wmax; ++n) {
            Composition J = out[i];
            J.parts.push_back(n);
            out.push_back(J);
        }
    }
    return out;
}

std::vector<Word> words_up_to(int len) {
    std::vector<Word> out{Word()};
    for (int n = 1; n <= len; ++n)
        for (unsigned b = 0; b < (1u << n); ++b) {
            std::string s;
            for (int i = n - 1; i >= 0; --i) s.push_back(static_cast<char>('0' + ((b >> i) & 1)));
            out.push_back(Word::parse(s));
        }
    return out;
}

// all interleavings, by choosing which positions come from a
WordComb shuffle_oracle(const Word& a, const Word& b) {
    const int r = a.weight(), n = a.weight() + b.weight();
    WordComb out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != r) continue;
        std::string s;
        int i = 0, j = 0;
        for (int k = 0; k < n; ++k) s.push_back(static_cast<char>('0' + ((mask >> k) & 1 ? a.letter(i++) : b.letter(j++))));
        out[Word::parse(s)] += 1;
    }
    return out;
}

// place a and b on k slots (order-preserving, jointly surjective); shared slots add
CompComb stuffle_oracle(const Composition& a, const Composition& b) {
    const int r = a.depth(), s = b.depth();
    CompComb out;
    if (r + s == 0) {
        out[Composition()] = 1;
        return out;
    }
    for (int k = std::max(r, s); k <= r + s; ++k)
        for (unsigned A = 0; A < (1u << k); ++A) {
            if (std::popcount(A) != r) continue;
            for (unsigned B = 0; B < (1u << k); ++B) {
                if (std::popcount(B) != s || (A | B) != (1u << k) - 1) continue;
                std::vector<int> parts(static_cast<size_t>(k), 0);
                int i = 0, j = 0;
                for (int t = 0; t < k; ++t) {
                    if ((A >> t) & 1) parts[static_cast<size_t>(t)] += a.parts[static_cast<size_t>(i++)];
                    if ((B >> t) & 1) parts[static_cast<size_t>(t)] += b.parts[static_cast<size_t>(j++)];
                }
                out[Composition(parts)] += 1;
            }
        }
    return out;
}

Outcome combinatorial_oracles() {
    Outcome o;
    long checked = 0;
    for (auto& a : words_up_to(8))
        for (auto& b : words_up_to(8 - a.weight())) {
            if (shuffle(a, b) != shuffle_oracle(a, b)) o.pass = false;
            ++checked;
        }
    for (auto& I : compositions(8))
        for (auto& J : compositions(8 - I.weight())) {
            if (stuffle(I, J) != stuffle_oracle(I, J)) o.pass = false;
            ++checked;
        }
    long har_checks = 0;
    for (auto& I : compositions(6))
        for (auto& J : compositions(6 - I.weight()))
            for (long m = 1; m <= 60; m += (I.weight() + J.weight() > 4 ? 3 : 1)) {
                if (!run_identity(stuffle_har_identity(m, I, J)).exact_zero) o.pass = false;
                ++har_checks;
            }
    o.detail = std::to_string(checked) + " product pairs, " + std::to_string(har_checks) + " har stuffle identities";
    return o;
}

Rational har_naive(long m, const Composition& I) {
    const int d = I.depth();
    Rational total = 0;
    std::vector<long> mi(static_cast<size_t>(d));
    auto rec = [&](auto&& self, int k, long lo, const Rational& acc) -> void {
        if (k == d) {
            total += acc;
            return;
        }
        // mi[k] is the k-th smallest, paired with n_1 first
        for (long x = lo; x < m; ++x)
            self(self, k + 1, x + 1, acc * Rational(x).pow(-I.parts[static_cast<size_t>(d - 1 - k)]));
    };
    rec(rec, 0, 1, Rational(1));
    return total * Rational(m).pow(I.weight());
}

Outcome dp_correctness() {
    Outcome o;
    long n = 0;
    for (auto& I : compositions(6, 3)) {
        auto range = har_range(50, I);
        for (long m = 1; m <= 50; ++m) {
            Rational naive = har_naive(m, I);
            if (har(m, I) != naive || range[static_cast<size_t>(m - 1)] != naive) o.pass = false;
            ++n;
        }
    }
    o.detail = std::to_string(n) + " values";
    return o;
}

Outcome valuation_and_alpha() {
    Outcome o;
    long violations = 0, n = 0;
    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (auto& I : compositions(5)) {
            if (I.empty()) continue;
            auto rep = check_alpha_independence(p, I, 2);
            for (long r : rep.residues)
                if (r < 0) ++violations;
            if (!rep.pass) o.pass = false;
            ++n;
        }
    o.pass = o.pass && violations == 0;
    o.detail = std::to_string(n) + " (p, I), " + std::to_string(violations) + " valuation violations";
    return o;
}

Outcome zeta2_vanishes() {
    Outcome o;
    long worst_l = 0;
    for (long p : {5L, 7L, 11L, 13L})
        for (int a : {1, 2}) {
            auto r = check_zeta2(p, a, 10);
            o.pass = o.pass && r.pass;
            worst_l = std::max<long>(worst_l, r.details["l_stop"].get<long>());
        }
    o.detail = "precision 10, largest l_stop " + std::to_string(worst_l);
    return o;
}

Outcome sigma_expansion() {
    Outcome o;
    long n = 0, min_slack = PAdic::kInf;
    auto take = [&](const Report& r) {
        o.pass = o.pass && r.pass;
        for (auto& d : r.details)
            min_slack = std::min(min_slack, d["defect_valuation"].get<long>() - d["threshold"].get<long>());
        ++n;
    };
    for (long p : {5L, 7L})
        for (int a : {1, 2}) {
            for (int k = 1; k <= 4; ++k) take(check_expansion(p, a, Composition{k}, 20, 8));
            for (auto& I : compositions(5, 2))
                if (I.depth() == 2) take(check_expansion(p, a, I, 12, 6));
        }
    o.detail = std::to_string(n) + " expansions, smallest margin over the bound " + std::to_string(min_slack);
    return o;
}

PAdic direct_depth1_entry(long p, int alpha, int b, int n, long K) {
    PAdic total = PAdic::exact_zero(p);
    long vb = vp_int(BigInt(b), p);
    for (int l = b - 1; n + l - 1 - vb < K + 1; ++l) {
        Rational c = binom_general(-n, l) * b_coeff_closed(l, b);
        total += har_padic(ipow(p, static_cast<unsigned long>(alpha)).get_si(), Composition{n + l}, p, K + 2 + vb).mul_rational(c);
    }
    return total;
}

Outcome depth1_coefficients() {
    Outcome o;
    const long K = 8;
    long n_checked = 0;
    for (long p : {5L, 7L})
        for (int a : {1, 2}) {
            AdjointTable T(p, a, K);
            for (int n = 1; n <= 4; ++n)
                for (int b = 1; b <= 5; ++b) {
                    PAdic e = T.entry(b, Composition{n});
                    PAdic d = direct_depth1_entry(p, a, b, n, K);
                    long cert = std::min(e.precision(), d.precision());
                    if (cert < K || defect_valuation(e, d) < cert) o.pass = false;
                    ++n_checked;
                }
        }
    o.detail = std::to_string(n_checked) + " entries at p^8";
    return o;
}

Outcome resummation() {
    Outcome o;
    long n = 0;
    for (long p : {5L, 7L})
        for (auto& I : compositions(4, 2)) {
            if (I.empty()) continue;
            o.pass = o.pass && check_resummation(p, 1, I, 6, 10).pass;
            ++n;
        }
    o.detail = std::to_string(n) + " indices, B = 6";
    return o;
}

Outcome adjoint_quasi_shuffle() {
    Outcome o;
    long worst = PAdic::kInf;
    for (long p : {5L, 7L})
        for (int n1 = 1; n1 <= 3; ++n1)
            for (int n2 = 1; n2 <= 3; ++n2)
                for (int b = 0; b <= 4; ++b) {
                    auto r = check_adjoint_stuffle(p, 1, b, n1, n2, 5);
                    o.pass = o.pass && r.pass && r.threshold >= 5;
                    worst = std::min(worst, r.exact_zero ? PAdic::kInf : r.defect_valuation);
                }
    o.detail = "smallest defect valuation " + std::to_string(worst);
    return o;
}

std::vector<Rational> vandermonde_fit(int l) {
    const int n = l + 3;
    std::vector<std::vector<Rational>> A(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n + 1)));
    for (int i = 0; i < n; ++i) {
        long m = i + 1;
        Rational s = l == 0 ? Rational(m) : Rational(0);
        if (l > 0)
            for (long u = 1; u < m; ++u) s += Rational(u).pow(l);
        for (int j = 0; j < n; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rational(m).pow(j);
        A[static_cast<size_t>(i)][static_cast<size_t>(n)] = s;
    }
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            Rational f = A[static_cast<size_t>(r)][static_cast<size_t>(c)] / A[static_cast<size_t>(c)][static_cast<size_t>(c)];
            for (int j = c; j <= n; ++j)
                A[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * A[static_cast<size_t>(c)][static_cast<size_t>(j)];
        }
    }
    std::vector<Rational> out(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c)
        out[static_cast<size_t>(c)] = A[static_cast<size_t>(c)][static_cast<size_t>(n)] / A[static_cast<size_t>(c)][static_cast<size_t>(c)];
    return out;
}

Outcome bcoeff_identities() {
    Outcome o;
    long n = 0;
    for (int l1 = 0; l1 <= 8; ++l1)
        for (int l2 = 0; l2 <= 8; ++l2)
            for (int b = 2; b <= l1 + l2 + 2; ++b) {
                o.pass = o.pass && run_identity(bcoeff_quasi_shuffle_identity(l1, l2, b)).exact_zero;
                ++n;
            }
    for (int l = 0; l <= 10; ++l) {
        auto fit = vandermonde_fit(l);
        for (int b = 1; b <= l + 1; ++b) o.pass = o.pass && b_coeff_closed(l, b) == fit[static_cast<size_t>(b)];
    }
    o.detail = std::to_string(n) + " quasi-shuffle identities, closed form for l <= 10";
    return o;
}

Outcome depth1_iteration() {
    Outcome o;
    for (long p : {3L, 5L, 7L})
        for (int n = 1; n <= 4; ++n) o.pass = o.pass && check_iteration(p, 1, 2, n, 6).pass;
    o.detail = "p in {3,5,7}, n <= 4, mod p^6";
    return o;
}

Outcome ahy() {
    Outcome o;
    for (int n = 1; n <= 5; ++n) o.pass = o.pass && check_ahy(n, 50).pass;
    o.detail = "n <= 5, p <= 50";
    return o;
}

Outcome ihara_and_contraction() {
    Outcome o;
    auto law = check_ihara_group_law(100, 6, 20240601ull);
    ContractionOptions c;
    c.trials = 100;
    c.N = 8;
    c.p = 5;
    c.seed = 20240601ull;
    auto con = check_contraction_suite(c);
    o.pass = law.pass && con.pass;
    auto last = con.details["iteration"].back();
    o.detail = "group law " + std::string(law.pass ? "exact" : "broken") + ", contraction slack " +
               std::to_string(con.defect_valuation) + ", seeds agree to p^" + std::to_string(last["agreement"].get<long>()) +
               " (certified " + std::to_string(last["certified"].get<long>()) + ")";
    return o;
}

Outcome finite_smoke() {
    Outcome o;
    for (int n = 1; n <= 6; ++n) o.pass = o.pass && check_finite_depth1(200, n).pass;
    o.pass = o.pass && finite_mzv(Composition{1, 1}, {5}).front().residue == 0;
    o.detail = "p <= 200, n <= 6, (1,1) at p = 5";
    return o;
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    fs::path dir = fs::temp_directory_path() / ("hf_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cache = (dir / "cache").string();
    const std::vector<std::string> tables = {
        "har --index 2,1 --p 5 7 --alpha 1 2 --prec 8 --format csv",
        "har --index 3 --m 40 --format json",
        "finite-mzv --index 2,1 --pmax 60",
        "zeta1 --p 5 7 11 --alpha 1 --n 4 --prec 8 --format json",
        "adjoint --index 1,2 --b 0 1 2 --p 7 --prec 5 --format csv",
        "expand-sigma --index 2,1 --cutoff 6 --format json",
    };
    int k = 0;
    for (auto& cmd : tables) {
        std::string out[2];
        for (int pass = 0; pass < 2; ++pass) {
            fs::path f = dir / ("t" + std::to_string(k) + "_" + std::to_string(pass));
            std::string line = std::string(HARMFROB_EXE) + " " + cmd + " --cache-dir " + cache + " --out " + f.string();
            if (std::system(line.c_str()) != 0) o.pass = false;
            out[pass] = slurp(f);
        }
        if (out[0].empty() || out[0] != out[1]) o.pass = false;
        ++k;
    }
    SuiteOptions s;
    s.timing = false;
    auto a = reports_json(run_suite("default", s), false);
    s.threads = 4;
    auto b = reports_json(run_suite("default", s), false);
    if (a != b) o.pass = false;
    fs::remove_all(dir);
    o.detail = std::to_string(tables.size()) + " table commands cold and warm, default suite on 1 and 4 threads";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
        {"shuffle, stuffle and har stuffle oracles", combinatorial_oracles},
        {"har prefix-sum DP against nested loops", dp_correctness},
        {"valuation and alpha-independence of har_{p^alpha}", valuation_and_alpha},
        {"zeta_{p,alpha}(2) vanishes", zeta2_vanishes},
        {"Sigma-expansion against exact sums", sigma_expansion},
        {"depth-one adjoint coefficients", depth1_coefficients},
        {"resummation of adjoint entries", resummation},
        {"adjoint quasi-shuffle in depth (1,1)", adjoint_quasi_shuffle},
        {"B-coefficient quasi-shuffle and closed form", bcoeff_identities},
        {"depth-one iteration", depth1_iteration},
        {"AHY congruence in depth one", ahy},
        {"Ihara group law and contraction", ihara_and_contraction},
        {"finite MZV smoke tests", finite_smoke},
        {"determinism of tables and suites", determinism},
    };
    int failed = 0;
    for (auto& [name, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        auto s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << " | " << static_cast<long>(s * 1000)
                  << " ms" << std::endl;
    }
    std::cout << (criteria.size() - static_cast<size_t>(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
