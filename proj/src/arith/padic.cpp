#include "harmfrob/arith.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace hf {

const BigInt& ppow(long p, long k) {
    if (k < 0) throw std::domain_error("negative power");
    thread_local std::unordered_map<long, std::vector<BigInt>> cache;
    auto& v = cache[p];
    if (v.empty()) v.push_back(1);
    while (static_cast<long>(v.size()) <= k) v.push_back(v.back() * p);
    return v[static_cast<size_t>(k)];
}

namespace {

BigInt mod_pk(const BigInt& x, long p, long k) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), ppow(p, k).get_mpz_t());
    return r;
}

BigInt inv_mod_pk(const BigInt& x, long p, long k) {
    BigInt r;
    if (k == 0) return 0;
    if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), ppow(p, k).get_mpz_t()))
        throw std::logic_error("non-unit in p-adic inversion");
    return r;
}

}  // namespace

PAdic PAdic::exact_zero(long p) {
    PAdic r;
    r.p_ = p;
    return r;
}

PAdic PAdic::zero(long p, long abs_prec) {
    PAdic r;
    r.p_ = p;
    r.v_ = abs_prec;
    r.A_ = abs_prec;
    r.u_ = 0;
    return r;
}

PAdic PAdic::from_parts(long p, long v, const BigInt& u, long abs_prec) {
    PAdic r;
    r.p_ = p;
    r.v_ = v;
    r.A_ = abs_prec;
    r.u_ = u;
    r.normalize();
    return r;
}

PAdic PAdic::from_rational(const Rational& q, long p, long abs_prec) {
    if (q.is_zero()) return exact_zero(p);
    long v = q.vp(p);
    if (v >= abs_prec) return zero(p, abs_prec);
    BigInt n = q.num(), d = q.den();
    mpz_class pp = p;
    mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    mpz_remove(d.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    long r = abs_prec - v;
    PAdic out;
    out.p_ = p;
    out.v_ = v;
    out.A_ = abs_prec;
    out.u_ = mod_pk(n * inv_mod_pk(d, p, r), p, r);
    return out;
}

void PAdic::normalize() {
    if (A_ >= kInf) {
        v_ = kInf;
        u_ = 0;
        return;
    }
    if (v_ >= A_) {
        v_ = A_;
        u_ = 0;
        return;
    }
    u_ = mod_pk(u_, p_, A_ - v_);
    if (u_ == 0) {
        v_ = A_;
        return;
    }
    mpz_class pp = p_;
    long k = static_cast<long>(mpz_remove(u_.get_mpz_t(), u_.get_mpz_t(), pp.get_mpz_t()));
    v_ += k;
}

void PAdic::check_prime(const PAdic& o) const {
    if (p_ != o.p_) throw std::invalid_argument("p-adic operands at different primes");
}

PAdic operator+(const PAdic& a, const PAdic& b) {
    a.check_prime(b);
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    long A = std::min(a.A_, b.A_);
    long vmin = std::min(a.v_, b.v_);
    if (vmin >= A) return PAdic::zero(a.p_, A);
    BigInt x = 0;
    if (a.v_ < A) x += a.u_ * ppow(a.p_, a.v_ - vmin);
    if (b.v_ < A) x += b.u_ * ppow(a.p_, b.v_ - vmin);
    return PAdic::from_parts(a.p_, vmin, x, A);
}

PAdic operator*(const PAdic& a, const PAdic& b) {
    a.check_prime(b);
    if (a.is_exact_zero() || b.is_exact_zero()) return PAdic::exact_zero(a.p_);
    long v = a.v_ + b.v_;
    long A = std::min(a.A_ + b.v_, b.A_ + a.v_);
    if (v >= A) return PAdic::zero(a.p_, A);
    PAdic r;
    r.p_ = a.p_;
    r.v_ = v;
    r.A_ = A;
    r.u_ = mod_pk(a.u_ * b.u_, a.p_, A - v);
    return r;
}

PAdic PAdic::operator-() const {
    if (is_zero()) return *this;
    PAdic r = *this;
    r.u_ = ppow(p_, A_ - v_) - u_;
    return r;
}

PAdic PAdic::inverse() const {
    if (is_exact_zero()) throw InversionOfZero("inverse of exact zero");
    if (is_zero()) throw PrecisionExhausted("inverse of a value indistinguishable from zero");
    long r = A_ - v_;
    PAdic out;
    out.p_ = p_;
    out.v_ = -v_;
    out.A_ = A_ - 2 * v_;
    out.u_ = inv_mod_pk(u_, p_, r);
    return out;
}

PAdic PAdic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return from_rational(Rational(1), p_, is_zero() ? 0 : A_ - v_);
    PAdic base = *this;
    PAdic result = base;
    for (long i = 1; i < e; ++i) result = result * base;
    return result;
}

PAdic PAdic::mul_rational(const Rational& q) const {
    if (q.is_zero() || is_exact_zero()) return exact_zero(p_);
    long k = q.vp(p_);
    if (is_zero()) return zero(p_, A_ + k);
    BigInt n = q.num(), d = q.den();
    mpz_class pp = p_;
    mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    mpz_remove(d.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    long r = A_ - v_;
    PAdic out;
    out.p_ = p_;
    out.v_ = v_ + k;
    out.A_ = A_ + k;
    out.u_ = mod_pk(u_ * n * inv_mod_pk(d, p_, r), p_, r);
    return out;
}

PAdic PAdic::with_precision(long abs_prec) const {
    if (abs_prec >= A_) return *this;
    if (is_exact_zero()) return zero(p_, abs_prec);
    return from_parts(p_, v_, u_, abs_prec);
}

Rational PAdic::to_rational() const {
    if (is_zero()) return Rational(0);
    if (v_ >= 0) return Rational(BigInt(u_ * ppow(p_, v_)));
    return Rational(u_, ppow(p_, -v_));
}

BigInt PAdic::residue(long k) const {
    if (k > A_) throw PrecisionExhausted("residue requested beyond certified precision");
    if (is_zero() || v_ >= k) return 0;
    if (v_ < 0) throw std::domain_error("residue of a non-integral p-adic number");
    return mod_pk(u_ * ppow(p_, v_), p_, k);
}

std::vector<long> PAdic::digits() const {
    std::vector<long> out;
    if (is_zero()) return out;
    BigInt t = u_;
    for (long i = 0; i < A_ - v_; ++i) {
        BigInt d;
        mpz_fdiv_qr_ui(t.get_mpz_t(), d.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p_));
        out.push_back(d.get_si());
    }
    return out;
}

std::string PAdic::str() const {
    if (is_exact_zero()) return "0";
    std::ostringstream os;
    if (is_zero()) {
        os << "O(" << p_ << "^" << A_ << ")";
        return os.str();
    }
    os << p_ << "^" << v_ << " * (";
    auto d = digits();
    for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << ") + O(" << p_ << "^" << A_ << ")";
    return os.str();
}

bool operator==(const PAdic& a, const PAdic& b) {
    return a.p_ == b.p_ && a.v_ == b.v_ && a.A_ == b.A_ && a.u_ == b.u_;
}

long defect_valuation(const PAdic& a, const PAdic& b) {
    PAdic d = a - b;
    return d.valuation();
}

}  // namespace hf
