#pragma once

#include <map>
#include <stdexcept>

#include "bott/detail.hpp"

namespace bott {

// Finitely supported Laurent series sum_k c_k x^k with coefficients in R.
// R provides +, -, *, is_zero(R) and a default-constructed zero.
template <class R>
class Laurent {
public:
    using Terms = std::map<int, R>;

    Laurent() = default;
    Laurent(const R& c) { add(0, c); }
    static Laurent monomial(int k, const R& c) {
        Laurent r;
        r.add(k, c);
        return r;
    }

    const Terms& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    const R& coeff(int k) const {
        static const R zero{};
        auto it = c_.find(k);
        return it == c_.end() ? zero : it->second;
    }

    void add(int k, const R& x) {
        if (is_zero_coeff(x)) return;
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, x);
            return;
        }
        it->second = it->second + x;
        if (is_zero_coeff(it->second)) c_.erase(it);
    }

    Laurent operator-() const {
        Laurent r;
        for (const auto& [k, x] : c_) r.c_.emplace(k, -x);
        return r;
    }
    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (const auto& [k, x] : b.c_) r.add(k, x);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [i, x] : a.c_)
            for (const auto& [j, y] : b.c_) r.add(i + j, x * y);
        return r;
    }
    Laurent& operator+=(const Laurent& b) {
        for (const auto& [k, x] : b.c_) add(k, x);
        return *this;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) {
        if (a.c_.size() != b.c_.size()) return false;
        auto i = a.c_.begin();
        for (auto j = b.c_.begin(); j != b.c_.end(); ++i, ++j)
            if (i->first != j->first || !(i->second == j->second)) return false;
        return true;
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    // x -> x^{-1}
    Laurent reversed() const {
        Laurent r;
        for (const auto& [k, x] : c_) r.c_.emplace(-k, x);
        return r;
    }
    Laurent shifted(int s) const {
        Laurent r;
        for (const auto& [k, x] : c_) r.c_.emplace(k + s, x);
        return r;
    }
    template <class F>
    Laurent map(F f) const {
        Laurent r;
        for (const auto& [k, x] : c_) r.add(k, f(x));
        return r;
    }

private:
    static bool is_zero_coeff(const R& x) { return detail::iz(x); }
    Terms c_;
};

template <class R>
bool is_zero(const Laurent<R>& x) { return x.is_zero(); }

// Star-adjoint with the formal variable unitary: x^k c -> x^{-k} c*.
template <class R>
Laurent<R> adjoint(const Laurent<R>& x) {
    Laurent<R> r;
    for (const auto& [k, c] : x.terms()) r.add(-k, adjoint(c));
    return r;
}

template <class K, class R>
Laurent<R> scale(const K& c, const Laurent<R>& x) {
    return x.map([&](const R& y) { return scale(c, y); });
}

}  // namespace bott
