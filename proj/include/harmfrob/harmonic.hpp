#pragma once

#include "harmfrob/arith.hpp"
#include "harmfrob/store.hpp"
#include "harmfrob/words.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace hf {

struct OpCounter {
    std::atomic<long> ops{0};
};

// har_m(n_d,...,n_1) = m^w * sum_{0<m_1<...<m_d<m} prod m_i^{-n_i}
Rational har(long m, const Composition& I);
Rational har_unweighted(long m, const Composition& I);
// element k is har_{k+1}(I), k = 0..M-1, from a single sweep
std::vector<Rational> har_range(long M, const Composition& I, OpCounter* counter = nullptr);

// weighted value with certified absolute precision >= K (working precision is raised until it is)
PAdic har_padic(long m, const Composition& I, long p, long K);
std::vector<PAdic> har_range_padic(long M, const Composition& I, long p, long K, OpCounter* counter = nullptr);

// sum over r_{d+1}+...+r_1 = r of C(-l_f, r_{d+1}) prod C(-n_i, r_i) har_m(n_i + r_i), as a polynomial in l_f
Polynomial har_extended(long m, const Composition& I, int r);

struct FiniteMzvResidue {
    long p;
    Composition index;
    long residue;
};

struct ValuationViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// (p^{-w} har_p(I)) mod p
std::vector<FiniteMzvResidue> finite_mzv(const Composition& I, const std::vector<long>& primes);
std::string finite_mzv_csv(const std::vector<FiniteMzvResidue>& rows);

struct AlphaIndependenceReport {
    long p;
    Composition index;
    std::vector<long> residues;   // alpha = 1..alpha_max
    bool pass;
};
AlphaIndependenceReport check_alpha_independence(long p, const Composition& I, int alpha_max);

// Process-wide memo of har_{p^alpha}(I), optionally backed by the on-disk store.
class HarCache {
public:
    static HarCache& global();
    void attach_store(std::shared_ptr<CacheStore> store);
    std::shared_ptr<CacheStore> store() const;
    PAdic prime_power(long p, int alpha, const Composition& I, long K);
    void clear();

private:
    mutable std::mutex mu_;
    std::map<std::tuple<long, int, Composition>, PAdic> mem_;
    std::shared_ptr<CacheStore> store_;
};

}  // namespace hf
