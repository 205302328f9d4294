#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bott/circle.hpp"
#include "bott/loop.hpp"

namespace bott {

using Idx = std::pair<long, long>;

template <class K>
using Sym = Laurent<Entry<K>>;  // z-symbol with v-graded matrix coefficients

template <class K>
using FinMap = std::map<Idx, Entry<K>>;

struct SingularFiniteBlock : std::domain_error {
    using std::domain_error::domain_error;
};
struct HintMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

template <class K>
Sym<K> lift_loop(const CyclicLoop& a) {
    Sym<K> r;
    for (const auto& [k, c] : a.terms().terms()) r.add(k, Entry<K>(lift<K>(c)));
    return r;
}

template <class K>
void fin_add(FinMap<K>& m, const Idx& ij, const Entry<K>& x) {
    if (x.is_zero()) return;
    auto it = m.find(ij);
    if (it == m.end()) {
        m.emplace(ij, x);
        return;
    }
    it->second += x;
    if (it->second.is_zero()) m.erase(it);
}

// Operator on Z x Z: quadrant symbols plus a finite correction.
//   entry(i,j) = neg_{i-j} if i,j < 0;  pos_{i-j} if i,j >= 0;  0 otherwise;  + fin(i,j)
// U(a) has neg = pos = a and finite off-quadrant blocks Y; Q has neg = -1, pos = 1.
// Operators on N are those with neg = 0 and fin inside N x N.
template <class K>
class Op {
public:
    int d = 1;
    Sym<K> neg, pos;
    FinMap<K> fin;

    Op() = default;
    explicit Op(int dim) : d(dim) {}

    // constructors
    static Op zero(int d) { return Op(d); }
    static Op identity(int d) { return quadrant(d, Sym<K>(one_entry(d)), Sym<K>(one_entry(d))); }
    static Op quadrant(int d, Sym<K> n, Sym<K> p) {
        Op r(d);
        r.neg = std::move(n);
        r.pos = std::move(p);
        return r;
    }
    static Op laurent(int d, const Sym<K>& a);  // U(a)
    static Op laurent(const CyclicLoop& a) { return laurent(a.dim(), lift_loop<K>(a)); }
    static Op unit_at(int d, long i, long j, const Entry<K>& c) {
        Op r(d);
        fin_add(r.fin, {i, j}, c);
        return r;
    }
    static Op Q(int d) { return quadrant(d, Sym<K>(-one_entry(d)), Sym<K>(one_entry(d))); }
    // Lambda(x, Q) = diag(x on negatives, 1 on N)
    static Op lambda_Q(int d, const Entry<K>& x) { return quadrant(d, Sym<K>(x), Sym<K>(one_entry(d))); }
    // E_Z(u) = 1 + (u - 1) e_00
    static Op corner(int d, const Entry<K>& u) {
        Op r = identity(d);
        fin_add(r.fin, {0, 0}, u - one_entry(d));
        return r;
    }
    // identity of N (as an operator on Z vanishing on negatives)
    static Op identity_N(int d) { return quadrant(d, Sym<K>(), Sym<K>(one_entry(d))); }
    static Op toeplitz(int d, const Sym<K>& a);  // W(a) on N
    static Op corner_N(int d, const Entry<K>& u) {
        Op r = identity_N(d);
        fin_add(r.fin, {0, 0}, u - one_entry(d));
        return r;
    }

    static Entry<K> one_entry(int d) { return Entry<K>(Mat<K>::identity(d)); }

    // access
    Entry<K> base_at(long i, long j) const {
        if (i < 0 && j < 0) return neg.coeff(static_cast<int>(i - j));
        if (i >= 0 && j >= 0) return pos.coeff(static_cast<int>(i - j));
        return Entry<K>();
    }
    Entry<K> at(long i, long j) const {
        Entry<K> e = base_at(i, j);
        auto it = fin.find({i, j});
        if (it != fin.end()) e += it->second;
        return e;
    }

    bool is_finite() const { return neg.is_zero() && pos.is_zero(); }
    bool on_N() const;  // vanishes outside N x N
    // Smallest window [lo, hi] containing all finite-part indices (lo > hi if empty).
    std::pair<long, long> fin_range() const;

    // arithmetic
    Op operator-() const;
    friend Op operator+(const Op& a, const Op& b) { return Op::add(a, b, 1); }
    friend Op operator-(const Op& a, const Op& b) { return Op::add(a, b, -1); }
    friend Op operator*(const Op& a, const Op& b) { return Op::mul(a, b); }
    friend bool operator==(const Op& a, const Op& b) {
        return a.neg == b.neg && a.pos == b.pos && a.fin == b.fin;
    }
    friend bool operator!=(const Op& a, const Op& b) { return !(a == b); }

    static Op add(const Op& a, const Op& b, int sign);
    static Op mul(const Op& a, const Op& b);
    Op scaled(const Entry<K>& c) const;  // c * A (c central: scalar times v^k)
    Op adjoint() const;                  // transpose, * on coefficients, v -> v^{-1}
    Op subst_v(const K& w) const;        // v -> w
    Op reflect() const;                  // entry(i,j) -> entry(-i,-j): conjugation by Qhat
    Op shift_conj() const;               // U(z) A U(z^{-1}): entry(i,j) -> entry(i-1,j-1)
    Op restrict_N() const;               // N x N corner

    // Two-sided inverse given the inverses of the quadrant symbols.
    Op inverse(const Sym<K>& neg_inv, const Sym<K>& pos_inv) const;

    // Rows (or columns) carrying finite-part entries.
    std::set<long> fin_rows() const;
    std::set<long> fin_cols() const;

    std::string str() const;
};

template <class K>
Op<K> lambda_op(const Op<K>& a, const Op<K>& b) {
    Op<K> one = Op<K>::identity(a.d);
    Op<K> s = one + a + b - a * b;
    return s.scaled(Entry<K>(Mat<K>::scalar(a.d, K(Rational(1, 2)))));
}

// Lambda(x, B) for a central scalar entry x: 1/2 (1 + x + B - xB).
template <class K>
Op<K> lambda_scalar(const Entry<K>& x, const Op<K>& B) {
    Op<K> one = Op<K>::identity(B.d);
    Op<K> s = one + one.scaled(x) + B - B.scaled(x);
    return s.scaled(Entry<K>(Mat<K>::scalar(B.d, K(Rational(1, 2)))));
}

// Four N x N blocks under the relabeling n <-> -1-n of the negative half.
template <class K>
struct BlockView {
    Op<K> mm, mp, pm, pp;  // rows/cols: m = negative half, p = N
};

template <class K>
BlockView<K> block_view(const Op<K>& A);
template <class K>
Op<K> assemble(const BlockView<K>& bv);

template <class K>
bool is_zero(const Op<K>& A) { return A.neg.is_zero() && A.pos.is_zero() && A.fin.empty(); }

template <class K>
Op<K> half(const Op<K>& A) { return A.scaled(entry_scalar<K>(A.d, K(Rational(1, 2)))); }

template <class K>
Mat<K> half(const Mat<K>& A) { return K(Rational(1, 2)) * A; }

template <class K>
Entry<K> lift_entry(const Entry<Rational>& e) {
    Entry<K> r;
    for (const auto& [k, c] : e.terms()) r.add(k, lift<K>(c));
    return r;
}

template <class K>
Op<K> lift_op(const Op<Rational>& A) {
    Op<K> r(A.d);
    for (const auto& [k, e] : A.neg.terms()) r.neg.add(k, lift_entry<K>(e));
    for (const auto& [k, e] : A.pos.terms()) r.pos.add(k, lift_entry<K>(e));
    for (const auto& [ij, e] : A.fin) fin_add(r.fin, ij, lift_entry<K>(e));
    return r;
}

// Entrywise evaluation of an operator over Q(t)[s] at a rational point.
inline Op<Rational> op_at(const Op<CircleScalar>& A, const CirclePoint& p) {
    auto ev = [&](const Entry<CircleScalar>& e) {
        Entry<Rational> r;
        for (const auto& [k, c] : e.terms()) {
            Mat<Rational> m = Mat<Rational>::zero(c.dim());
            for (int i = 0; i < c.dim(); ++i)
                for (int j = 0; j < c.dim(); ++j) m(i, j) = circle_eval(c(i, j), p);
            r.add(k, m);
        }
        return r;
    };
    Op<Rational> r(A.d);
    for (const auto& [k, e] : A.neg.terms()) r.neg.add(k, ev(e));
    for (const auto& [k, e] : A.pos.terms()) r.pos.add(k, ev(e));
    for (const auto& [ij, e] : A.fin) fin_add(r.fin, ij, ev(e));
    return r;
}

extern template class Op<Rational>;
extern template class Op<CircleScalar>;

}  // namespace bott
