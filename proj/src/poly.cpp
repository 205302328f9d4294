#include "bott/poly.hpp"

#include <stdexcept>

namespace bott {

Poly::Poly(const Rational& c) {
    if (!bott::is_zero(c)) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int k, const Rational& c) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && bott::is_zero(c_.back())) c_.pop_back();
}

Rational Poly::coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
}

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    r = a;
    std::vector<Rational> qc(std::max(0, a.degree() - b.degree() + 1), Rational(0));
    Rational lb = b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Rational f = r.lead() / lb;
        qc[k] = f;
        r = r - b * Poly::monomial(k, f);
    }
    q = Poly(std::move(qc));
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / lead());
}

Poly Poly::scaled(const Rational& x) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= x;
    r.trim();
    return r;
}

std::string Poly::str(const char* var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (bott::is_zero(c_[k])) continue;
        std::string c = to_string(c_[k]);
        if (!out.empty()) out += (c[0] == '-') ? " - " : " + ";
        else if (c[0] == '-') out += "-";
        if (c[0] == '-') c.erase(0, 1);
        if (k == 0) out += c;
        else {
            if (c != "1") out += c + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly g = Poly::gcd(num, den);
    Poly q, r, q2, r2;
    Poly::divmod(num, g, q, r);
    Poly::divmod(den, g, q2, r2);
    Rational l = q2.lead();
    num_ = q.scaled(Rational(1) / l);
    den_ = q2.scaled(Rational(1) / l);
}

Rational RatFunc::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (bott::is_zero(d)) throw std::domain_error("denominator vanishes at " + to_string(x));
    return num_.eval(x) / d;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, Poly(1), true);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace bott
