#pragma once

#include <string>
#include <vector>

#include "bott/poly.hpp"

namespace bott {

struct SymbolicPoint : std::domain_error {
    SymbolicPoint() : std::domain_error("evaluation requested at a symbolic point") {}
};

// Element p(t) + q(t)*s of Q(t)[s]/(s^2 + t^2 - 1).
class CircleScalar {
public:
    CircleScalar() = default;
    CircleScalar(const Rational& c) : p_(c) {}
    CircleScalar(int c) : p_(c) {}
    CircleScalar(RatFunc p, RatFunc q = RatFunc()) : p_(std::move(p)), q_(std::move(q)) {}

    static CircleScalar t() { return CircleScalar(RatFunc(Poly::t())); }
    static CircleScalar s() { return CircleScalar(RatFunc(), RatFunc(1)); }

    const RatFunc& p() const { return p_; }
    const RatFunc& q() const { return q_; }
    bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
    // True when the value lies in Q[t]: no s part and no denominators.
    bool is_polynomial_in_t() const { return q_.is_zero() && p_.is_polynomial(); }

    CircleScalar operator-() const { return CircleScalar(-p_, -q_); }
    friend CircleScalar operator+(const CircleScalar& a, const CircleScalar& b) {
        return CircleScalar(a.p_ + b.p_, a.q_ + b.q_);
    }
    friend CircleScalar operator-(const CircleScalar& a, const CircleScalar& b) {
        return CircleScalar(a.p_ - b.p_, a.q_ - b.q_);
    }
    friend CircleScalar operator*(const CircleScalar& a, const CircleScalar& b);
    CircleScalar& operator+=(const CircleScalar& b) { return *this = *this + b; }
    CircleScalar& operator-=(const CircleScalar& b) { return *this = *this - b; }
    CircleScalar& operator*=(const CircleScalar& b) { return *this = *this * b; }
    friend bool operator==(const CircleScalar& a, const CircleScalar& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }
    friend bool operator!=(const CircleScalar& a, const CircleScalar& b) { return !(a == b); }

    CircleScalar inverse() const;
    Rational eval(const Rational& t0, const Rational& s0) const;
    std::string str() const;

private:
    RatFunc p_, q_;
};

inline bool is_zero(const CircleScalar& x) { return x.is_zero(); }
inline CircleScalar inv(const CircleScalar& x) { return x.inverse(); }
inline std::string to_string(const CircleScalar& x) { return x.str(); }

struct CirclePoint {
    bool symbolic = false;
    Rational t = 0, s = 1;

    static CirclePoint symbol() { return CirclePoint{true, 0, 0}; }
    // Throws std::invalid_argument unless t^2 + s^2 = 1.
    static CirclePoint at(const Rational& t, const Rational& s);
    static CirclePoint from_u(const Rational& u);

    bool delta_plus() const { return !symbolic && t == 1 && s == 0; }
    bool delta_minus() const { return !symbolic && t == -1 && s == 0; }
    std::string str() const;
    friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
        return a.symbolic == b.symbolic && a.t == b.t && a.s == b.s;
    }
};

Rational circle_eval(const CircleScalar& a, const CirclePoint& p);

// Endpoints (0,1), (1,0) plus n-1 interior Pythagorean points, increasing in t.
std::vector<CirclePoint> pythagorean_grid(int n);

// Values of t and s in a scalar ring K, with the endpoint deltas.
template <class K>
struct Param {
    K t, s;
    bool dplus = false, dminus = false;
};

inline Param<Rational> param(const CirclePoint& p) {
    if (p.symbolic) throw SymbolicPoint();
    return Param<Rational>{p.t, p.s, p.delta_plus(), p.delta_minus()};
}

inline Param<CircleScalar> param_symbolic() {
    return Param<CircleScalar>{CircleScalar::t(), CircleScalar::s(), false, false};
}

inline Param<CircleScalar> param_circle(const CirclePoint& p) {
    if (p.symbolic) return param_symbolic();
    return Param<CircleScalar>{CircleScalar(p.t), CircleScalar(p.s), p.delta_plus(), p.delta_minus()};
}

}  // namespace bott
