#include "harmfrob/arith.hpp"

#include <cmath>

namespace hf {

Rational::Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
}

Rational::Rational(const BigInt& n, const BigInt& d) : q_(n, d) {
    if (d == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::domain_error("zero denominator");
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

long Rational::vp(long p) const {
    if (is_zero()) throw std::domain_error("valuation of zero");
    return vp_int(q_.get_num(), p) - vp_int(q_.get_den(), p);
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(q_.get_den(), q_.get_num());
}

long vp_int(const BigInt& n, long p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    mpz_class t = n, pp = p;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

BigInt ipow(long base, unsigned long e) {
    mpz_class r, b = base;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    for (long k = 2; k <= n; ++k)
        if (is_prime(k)) out.push_back(k);
    return out;
}

long floor_log(long p, long x) {
    long k = 0;
    for (long t = p; t <= x; t *= p) {
        ++k;
        if (t > LONG_MAX / p) break;
    }
    return k;
}

Rational factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational binom_general(long a, long l) {
    if (l < 0) return Rational(0);
    mpz_class r, n = a;
    // GMP handles negative n via C(-n, k) = (-1)^k C(n+k-1, k)
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(l));
    return Rational(r);
}

}  // namespace hf
