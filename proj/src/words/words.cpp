#include "harmfrob/words.hpp"

#include <sstream>

namespace hf {

Word Word::e0_power(int k) { return Word(0, k); }

Word Word::parse(const std::string& s) {
    if (s.size() > 64) throw std::invalid_argument("word too long");
    uint64_t b = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("word letters must be 0 or 1: " + s);
        b = (b << 1) | static_cast<uint64_t>(c - '0');
    }
    return Word(b, static_cast<int>(s.size()));
}

int Word::leading_e0() const {
    int k = 0;
    while (k < len_ && letter(k) == 0) ++k;
    return k;
}

Word Word::reversed() const {
    uint64_t b = 0;
    for (int i = 0; i < len_; ++i) b |= static_cast<uint64_t>(letter(i)) << i;
    return Word(b, len_);
}

std::string Word::str() const {
    std::string s;
    for (int i = 0; i < len_; ++i) s.push_back(static_cast<char>('0' + letter(i)));
    return s;
}

Word operator*(const Word& a, const Word& b) {
    if (a.len_ + b.len_ > 64) throw std::length_error("word longer than 64 letters");
    uint64_t hi = (b.len_ == 64) ? 0 : (a.bits_ << b.len_);
    return Word(hi | b.bits_, a.len_ + b.len_);
}

bool operator<(const Word& a, const Word& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    int da = a.depth(), db = b.depth();
    if (da != db) return da < db;
    return a.bits_ < b.bits_;
}

Composition Composition::parse(const std::string& s) {
    Composition c;
    if (s.empty()) return c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int n = 0;
        try {
            n = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed index: " + s);
        }
        if (pos != tok.size() || n < 1) throw std::invalid_argument("malformed index: " + s);
        c.parts.push_back(n);
    }
    return c;
}

Composition Composition::from_word(const Word& w) {
    if (!w.empty() && !w.ends_in_e1()) throw std::invalid_argument("word does not end in e1: " + w.str());
    Composition c;
    int run = 0;
    for (int i = 0; i < w.weight(); ++i) {
        ++run;
        if (w.letter(i) == 1) {
            c.parts.push_back(run);
            run = 0;
        }
    }
    return c;
}

int Composition::weight() const {
    int s = 0;
    for (int n : parts) s += n;
    return s;
}

Word Composition::word() const {
    Word w;
    for (int n : parts) w = w * Word::e0_power(n - 1) * Word::e1();
    return w;
}

std::string Composition::str() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s;
}

bool operator<(const Composition& a, const Composition& b) {
    int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a.parts < b.parts;
}

WordComb shuffle(const Word& a, const Word& b) {
    if (a.empty()) return {{b, 1}};
    if (b.empty()) return {{a, 1}};
    WordComb out;
    Word a0 = a.prefix(1), b0 = b.prefix(1);
    for (auto& [w, k] : shuffle(a.suffix(a.weight() - 1), b)) out[a0 * w] += k;
    for (auto& [w, k] : shuffle(a, b.suffix(b.weight() - 1))) out[b0 * w] += k;
    return out;
}

CompComb stuffle(const Composition& a, const Composition& b) {
    if (a.empty()) return {{b, 1}};
    if (b.empty()) return {{a, 1}};
    Composition A(std::vector<int>(a.parts.begin(), a.parts.end() - 1));
    Composition B(std::vector<int>(b.parts.begin(), b.parts.end() - 1));
    int x = a.parts.back(), y = b.parts.back();
    CompComb out;
    auto push = [&](const CompComb& c, int last) {
        for (auto& [comp, k] : c) {
            Composition t = comp;
            t.parts.push_back(last);
            out[t] += k;
        }
    };
    push(stuffle(A, b), x);
    push(stuffle(a, B), y);
    push(stuffle(A, B), x + y);
    return out;
}

std::pair<int, Word> antipode(const Word& w) {
    return {(w.weight() % 2) ? -1 : 1, w.reversed()};
}

std::pair<int, Composition> s_y(const Composition& I) {
    Composition r(std::vector<int>(I.parts.rbegin(), I.parts.rend()));
    return {(I.weight() % 2) ? -1 : 1, r};
}

NcSeries<Rational> shft_star(const Word& w, int N) {
    if (!w.empty() && !w.ends_in_e1()) throw std::invalid_argument("shft_* needs a word ending in e1");
    RingCtx<Rational> ctx;
    auto acc = NcSeries<Rational>::one(ctx, N);
    for (int n : Composition::from_word(w).parts) {
        NcSeries<Rational> block(ctx, N);
        for (int k = 0; n + k <= N; ++k)
            block.set(Word::e0_power(n - 1 + k) * Word::e1(), binom_general(-n, k));
        acc = acc * block;
    }
    return acc;
}

NcSeries<Rational> shft_star(const NcSeries<Rational>& f) {
    NcSeries<Rational> r(f.ctx(), f.weight_cutoff());
    for (auto& [w, c] : f.terms()) r += shft_star(w, f.weight_cutoff()).scaled(c);
    return r;
}

namespace {

long sat_add(long a, long b) {
    if (a >= PAdic::kInf || b >= PAdic::kInf) return PAdic::kInf;
    return a + b;
}

template <class Fn>
ValuationProfile profile_of(int N, std::optional<int> D, const Fn& each) {
    ValuationProfile P(N, D ? *D : N);
    each([&](const Word& w, long v) {
        long& slot = P.at(w.weight(), w.depth());
        slot = std::min(slot, v);
    });
    return P;
}

}  // namespace

ValuationProfile valuation_profile(const NcSeries<PAdic>& f) {
    return profile_of(f.weight_cutoff(), f.depth_cutoff(), [&](auto&& put) {
        for (auto& [w, c] : f.terms()) put(w, c.valuation());
    });
}

ValuationProfile valuation_profile(const NcSeries<Rational>& f, long p) {
    return profile_of(f.weight_cutoff(), f.depth_cutoff(), [&](auto&& put) {
        for (auto& [w, c] : f.terms()) put(w, c.vp(p));
    });
}

ValuationProfile minplus_convolution(const ValuationProfile& a, const ValuationProfile& b) {
    ValuationProfile c(a.N, a.D);
    for (int s = 0; s <= a.N; ++s)
        for (int d = 0; d <= a.D; ++d)
            for (int s1 = 0; s1 <= s; ++s1)
                for (int d1 = 0; d1 <= d; ++d1) {
                    if (s - s1 > b.N || d - d1 > b.D) continue;
                    long v = sat_add(a.at(s1, d1), b.at(s - s1, d - d1));
                    c.at(s, d) = std::min(c.at(s, d), v);
                }
    return c;
}

ValuationProfile minplus_closure(const ValuationProfile& a) {
    ValuationProfile P(a.N, a.D);
    P.at(0, 0) = 0;
    for (int s = 1; s <= a.N; ++s)
        for (int d = 0; d <= a.D; ++d) {
            long best = a.at(s, d);
            for (int s1 = 1; s1 < s; ++s1)
                for (int d1 = 0; d1 <= d; ++d1)
                    best = std::min(best, sat_add(P.at(s1, d1), P.at(s - s1, d - d1)));
            P.at(s, d) = best;
        }
    return P;
}

PAdic limit_e0(const NcSeries<PAdic>& f, const Word& w, long min_precision) {
    int L = f.weight_cutoff() - w.weight();
    if (L < 0) throw CutoffError("word exceeds the weight cutoff");
    auto at = [&](int l) { return f.coeff(Word::e0_power(l) * w); };
    PAdic x = at(L);
    long cert = x.precision();
    for (int k = 0; k < 2 && L - k >= 1; ++k) {
        PAdic d = at(L - k) - at(L - k - 1);
        cert = std::min(cert, d.valuation());
    }
    if (cert < min_precision)
        throw NotStabilized("e0-limit not stabilized for word " + w.str() + " (certified " +
                            std::to_string(cert) + ")");
    if (cert >= PAdic::kInf) return x;
    return x.with_precision(cert);
}

}  // namespace hf
