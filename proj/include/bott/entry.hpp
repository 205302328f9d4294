#pragma once

#include "bott/laurent.hpp"
#include "bott/mat.hpp"

namespace bott {

// Operator entries: Laurent polynomials in the formal variable v with d x d
// matrix coefficients over K.
template <class K>
using Entry = Laurent<Mat<K>>;

template <class K>
K power(const K& w, int k) {
    K base = k < 0 ? inv(w) : w;
    K r(1);
    for (int i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
    return r;
}

// sum_k c_k w^k
template <class K>
Mat<K> eval_at(const Laurent<Mat<K>>& x, const K& w) {
    Mat<K> r;
    for (const auto& [k, c] : x.terms()) r = r + power(w, k) * c;
    return r;
}

template <class K>
Entry<K> entry_const(const Mat<K>& m) { return Entry<K>(m); }

template <class K>
Entry<K> entry_scalar(int d, const K& c) { return Entry<K>(Mat<K>::scalar(d, c)); }

template <class K>
Entry<K> entry_v(int d, int k = 1, const K& c = K(1)) {
    return Entry<K>::monomial(k, Mat<K>::scalar(d, c));
}

template <class K>
bool v_free(const Entry<K>& e) {
    return e.is_zero() || (e.terms().size() == 1 && e.terms().begin()->first == 0);
}

template <class K>
Mat<K> constant_part(const Entry<K>& e) { return e.coeff(0); }

// Scalar ring conversion Rational -> K.
template <class K>
Mat<K> lift(const Mat<Rational>& m) {
    int d = m.dim();
    if (d == 0) return Mat<K>();
    Mat<K> r = Mat<K>::zero(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(i, j) = K(m(i, j));
    return r;
}

}  // namespace bott
