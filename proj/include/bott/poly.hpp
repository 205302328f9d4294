#pragma once

#include <string>
#include <vector>

#include "bott/rational.hpp"

namespace bott {

// Dense univariate polynomial over Q in the variable t, ascending coefficients.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    Poly(int c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs);

    static Poly t() { return Poly(std::vector<Rational>{0, 1}); }
    static Poly monomial(int k, const Rational& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const;
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational eval(const Rational& x) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Euclidean division: a = q*b + r with deg r < deg b.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    static Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
    Poly monic() const;
    Poly scaled(const Rational& x) const;

    std::string str(const char* var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Reduced quotient num/den with den monic and gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(int c) : RatFunc(Rational(c)) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}
    RatFunc(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Throws std::domain_error when the denominator vanishes at x.
    Rational eval(const Rational& x) const;

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const;

private:
    RatFunc(Poly num, Poly den, bool /*reduced*/) : num_(std::move(num)), den_(std::move(den)) {}
    Poly num_, den_;
};

}  // namespace bott
