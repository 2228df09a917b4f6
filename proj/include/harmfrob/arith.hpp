#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hf {

using BigInt = mpz_class;

// Exact rational number. Thin wrapper over mpq_class so that every operator
// returns a concrete value instead of a GMP expression template.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}
    Rational(long n, long d);
    Rational(const BigInt& n, const BigInt& d = 1);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rational parse(const std::string& s);

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    // p-adic valuation; throws on zero
    long vp(long p) const;
    Rational pow(long e) const;
    Rational inverse() const;
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

private:
    mpq_class q_;
};

long vp_int(const BigInt& n, long p);   // n != 0
BigInt ipow(long base, unsigned long e);
bool is_prime(long n);
std::vector<long> primes_up_to(long n);
long floor_log(long p, long x);         // largest k with p^k <= x, x >= 1

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InversionOfZero : std::domain_error {
    using std::domain_error::domain_error;
};

// p-adic number known modulo p^A. The value is p^v * u with u a unit modulo
// p^(A-v). Exact zero is separate from "zero to precision A"; the latter
// stores v == A and u == 0.
class PAdic {
public:
    static constexpr long kInf = LONG_MAX / 4;

    PAdic() = default;
    static PAdic exact_zero(long p);
    static PAdic zero(long p, long abs_prec);
    static PAdic from_rational(const Rational& q, long p, long abs_prec);
    static PAdic from_int(long n, long p, long abs_prec) { return from_rational(Rational(n), p, abs_prec); }
    // p^v * u + O(p^A); u need not be reduced or a unit
    static PAdic from_parts(long p, long v, const BigInt& u, long abs_prec);

    long prime() const { return p_; }
    // exact zero -> kInf; zero to precision A -> A
    long valuation() const { return v_; }
    long precision() const { return A_; }
    long rel_precision() const { return is_zero() ? 0 : A_ - v_; }
    const BigInt& unit() const { return u_; }
    bool is_exact_zero() const { return A_ >= kInf; }
    bool is_zero() const { return u_ == 0; }

    PAdic operator-() const;
    PAdic inverse() const;
    PAdic pow(long e) const;
    PAdic mul_rational(const Rational& q) const;
    PAdic with_precision(long abs_prec) const;   // lowers precision only

    Rational to_rational() const;
    // residue of the value mod p^k as integer in [0, p^k); needs v >= 0
    BigInt residue(long k) const;
    std::vector<long> digits() const;  // base-p digits of u, little endian, A-v entries
    std::string str() const;

    friend PAdic operator+(const PAdic& a, const PAdic& b);
    friend PAdic operator-(const PAdic& a, const PAdic& b) { return a + (-b); }
    friend PAdic operator*(const PAdic& a, const PAdic& b);
    friend PAdic operator/(const PAdic& a, const PAdic& b) { return a * b.inverse(); }
    PAdic& operator+=(const PAdic& o) { return *this = *this + o; }
    PAdic& operator-=(const PAdic& o) { return *this = *this - o; }
    PAdic& operator*=(const PAdic& o) { return *this = *this * o; }

    // structural equality, used for round-trip checks
    friend bool operator==(const PAdic& a, const PAdic& b);
    friend bool operator!=(const PAdic& a, const PAdic& b) { return !(a == b); }

private:
    void normalize();
    void check_prime(const PAdic& o) const;

    long p_ = 2;
    long v_ = kInf;
    long A_ = kInf;
    BigInt u_ = 0;
};

// valuation of a - b, capped at the common certified precision
long defect_valuation(const PAdic& a, const PAdic& b);

// cached p^k for the calling thread
const BigInt& ppow(long p, long k);

Rational bernoulli(long l);
Rational binom_general(long a, long l);
Rational factorial(long n);

// Dense univariate polynomial with rational coefficients.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) { if (!c.is_zero()) c_.push_back(c); }
    static Polynomial monomial(long k, const Rational& c = 1);
    static Polynomial x() { return monomial(1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(long k) const;
    void add_term(long k, const Rational& c);
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& t) const;
    std::string str(const std::string& var = "x") const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace hf
