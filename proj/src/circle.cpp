#include "bott/circle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bott {

namespace {
const RatFunc& one_minus_t2() {
    static const RatFunc r(Poly(std::vector<Rational>{1, 0, -1}));
    return r;
}
}  // namespace

CircleScalar operator*(const CircleScalar& a, const CircleScalar& b) {
    if (a.q_.is_zero() && b.q_.is_zero()) return CircleScalar(a.p_ * b.p_);
    return CircleScalar(a.p_ * b.p_ + a.q_ * b.q_ * one_minus_t2(), a.p_ * b.q_ + a.q_ * b.p_);
}

CircleScalar CircleScalar::inverse() const {
    RatFunc norm = p_ * p_ - q_ * q_ * one_minus_t2();
    if (norm.is_zero()) throw std::domain_error("circle scalar is not invertible");
    return CircleScalar(p_ / norm, -q_ / norm);
}

Rational CircleScalar::eval(const Rational& t0, const Rational& s0) const {
    Rational r = p_.eval(t0);
    if (!q_.is_zero()) r += q_.eval(t0) * s0;
    return r;
}

std::string CircleScalar::str() const {
    if (q_.is_zero()) return p_.str();
    std::string qs = "(" + q_.str() + ")*s";
    if (p_.is_zero()) return qs;
    return p_.str() + " + " + qs;
}

CirclePoint CirclePoint::at(const Rational& t, const Rational& s) {
    if (t * t + s * s != 1)
        throw std::invalid_argument("not a circle point: (" + to_string(t) + ", " + to_string(s) + ")");
    return CirclePoint{false, t, s};
}

CirclePoint CirclePoint::from_u(const Rational& u) {
    Rational d = 1 + u * u;
    return CirclePoint{false, 2 * u / d, (1 - u * u) / d};
}

std::string CirclePoint::str() const {
    if (symbolic) return "(t,s)";
    return "(" + to_string(t) + "," + to_string(s) + ")";
}

Rational circle_eval(const CircleScalar& a, const CirclePoint& p) {
    if (p.symbolic) throw SymbolicPoint();
    return a.eval(p.t, p.s);
}

std::vector<CirclePoint> pythagorean_grid(int n) {
    if (n < 1) throw std::invalid_argument("pythagorean_grid needs n >= 1");
    std::vector<CirclePoint> pts{CirclePoint::at(0, 1), CirclePoint::at(1, 0)};
    // u = 1/2 first, then p/q in (0,1) by increasing q.
    std::vector<Rational> us;
    if (n >= 2) us.push_back(Rational(1, 2));
    for (long q = 3; static_cast<int>(us.size()) < n - 1; ++q)
        for (long p = 1; p < q && static_cast<int>(us.size()) < n - 1; ++p)
            if (std::gcd(p, q) == 1) us.push_back(Rational(p, q));
    for (const auto& u : us) pts.push_back(CirclePoint::from_u(u));
    std::sort(pts.begin(), pts.end(), [](const CirclePoint& a, const CirclePoint& b) { return a.t < b.t; });
    return pts;
}

}  // namespace bott
