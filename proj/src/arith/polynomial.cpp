#include "harmfrob/arith.hpp"

#include <sstream>

namespace hf {

Polynomial Polynomial::monomial(long k, const Rational& c) {
    Polynomial p;
    p.add_term(k, c);
    return p;
}

Rational Polynomial::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(k)];
}

void Polynomial::add_term(long k, const Rational& c) {
    if (k < 0) throw std::invalid_argument("negative exponent in polynomial");
    if (c.is_zero()) return;
    if (static_cast<long>(c_.size()) <= k) c_.resize(static_cast<size_t>(k + 1));
    c_[static_cast<size_t>(k)] += c;
    trim();
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::eval(const Rational& t) const {
    Rational acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

std::string Polynomial::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].str();
        if (i == 1) os << "*" << var;
        else if (i > 1) os << "*" << var << "^" << i;
    }
    return os.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

Polynomial operator*(Polynomial a, const Rational& s) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
}

}  // namespace hf
