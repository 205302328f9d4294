#pragma once

#include <stdexcept>

#include "bott/op.hpp"

namespace bott {

// Unitary: the pair (C, C^dag). Poly: the pair (Ct, Ct') = (E(s) C, C^dag E(1/s)),
// which only involves polynomials in t.
enum class RotVariant { Unitary, Poly };

inline const char* variant_name(RotVariant v) { return v == RotVariant::Unitary ? "unitary" : "poly"; }

template <class K>
K tpow(const Param<K>& p, long n) {
    K r(1);
    for (long i = 0; i < n; ++i) r = r * p.t;
    return r;
}

// Left factor X(i, k): column k is supported on rows 0..k+1.
template <class K>
K rot_left(const Param<K>& p, RotVariant v, long i, long k) {
    if (k < 0 || i < 0 || i > k + 1) return K(0);
    if (i == k + 1) return -p.t;
    K one_m_t2 = K(1) - p.t * p.t;
    if (i == 0) return v == RotVariant::Unitary ? tpow(p, k) * p.s : tpow(p, k) * one_m_t2;
    return tpow(p, k - i) * (v == RotVariant::Unitary ? p.s * p.s : one_m_t2);
}

// Right factor Y(k, j): row k is supported on columns 0..k+1.
template <class K>
K rot_right(const Param<K>& p, RotVariant v, long k, long j) {
    if (v == RotVariant::Unitary) return rot_left(p, v, j, k);
    if (k < 0 || j < 0 || j > k + 1) return K(0);
    if (j == k + 1) return -p.t;
    if (j == 0) return tpow(p, k);
    return tpow(p, k - j) * (K(1) - p.t * p.t);
}

struct NoTailForm : std::domain_error {
    using std::domain_error::domain_error;
};

// Entry (i, j) of X W(z^n) Y: the sum over k of X(i, k + n) Y(k, j). Past a finite
// prefix the summands form a geometric series with ratio t^2, summed in closed form.
template <class K>
K tail_entry(const Param<K>& p, RotVariant v, long n, long i, long j) {
    long k0 = std::max(0L, -n);
    long K0 = std::max({i, j, 0L}) + std::labs(n) + 3;
    K acc(0);
    for (long k = k0; k < K0; ++k) acc += rot_left(p, v, i, k + n) * rot_right(p, v, k, j);
    K first = rot_left(p, v, i, K0 + n) * rot_right(p, v, K0, j);
    if (detail::iz(first)) return acc;
    K t2 = p.t * p.t;
    K second = rot_left(p, v, i, K0 + 1 + n) * rot_right(p, v, K0 + 1, j);
    if (second != t2 * first) throw NoTailForm("summands are not geometric");
    K denom = K(1) - t2;
    if (detail::iz(denom)) throw NoTailForm("geometric tail diverges at t = +-1");
    return acc + first * inv(denom);
}

template <class K>
Entry<K> sc_entry(int d, const K& c) { return entry_scalar<K>(d, c); }

// X W(z^n) Y in closed form, as an operator on N.
// Unitary: W(z^n) - e_{n0} + sum_{i<=n} c_i e_{i0} - delta_+ e_00 - (-1)^n delta_- e_00 with
// c_0 = t^n, c_i = t^{n-i} s; the transpose for negative n.
// Poly: W(z^n) - e_{n0} + sum_{i<=n} t^{n-i} e_{i0};
// for negative n = -m: W(z^-m) - e_{0m} + t^m e_00 + sum_{1<=j<=m} t^{m-j}(1-t^2) e_{0j}.
template <class K>
Op<K> w_conj_closed(int d, const Param<K>& p, RotVariant v, long n, bool with_delta = true) {
    Op<K> R = Op<K>::toeplitz(d, Sym<K>::monomial(static_cast<int>(n), Op<K>::one_entry(d)));
    long m = std::labs(n);
    auto put = [&](long r, long c, const K& x) {
        if (n >= 0) fin_add(R.fin, {r, c}, sc_entry<K>(d, x));
        else fin_add(R.fin, {c, r}, sc_entry<K>(d, x));
    };
    if (m > 0) {
        put(m, 0, K(-1));
        if (v == RotVariant::Unitary) {
            put(0, 0, tpow(p, m));
            for (long i = 1; i <= m; ++i) put(i, 0, tpow(p, m - i) * p.s);
        } else if (n > 0) {
            for (long i = 0; i <= m; ++i) put(i, 0, tpow(p, m - i));
        } else {
            put(0, 0, tpow(p, m));
            for (long i = 1; i <= m; ++i) put(i, 0, tpow(p, m - i) * (K(1) - p.t * p.t));
        }
    }
    if (with_delta && v == RotVariant::Unitary) {
        K dl(0);
        if (p.dplus) dl += K(1);
        if (p.dminus) dl += (m % 2 == 0 ? K(1) : K(-1));
        if (!detail::iz(dl)) fin_add(R.fin, {0, 0}, sc_entry<K>(d, -dl));
    }
    return R;
}

// X F Y for a finite F on N: each e_{kl} maps to col_k(X) (x) row_l(Y).
template <class K>
FinMap<K> conj_finite(const FinMap<K>& F, const Param<K>& p, RotVariant v) {
    FinMap<K> out;
    for (const auto& [kl, f] : F) {
        auto [k, l] = kl;
        if (k < 0 || l < 0) throw std::invalid_argument("finite part is not supported on N x N");
        for (long i = 0; i <= k + 1; ++i) {
            K x = rot_left(p, v, i, k);
            if (detail::iz(x)) continue;
            for (long j = 0; j <= l + 1; ++j) {
                K y = rot_right(p, v, l, j);
                if (!detail::iz(y)) fin_add(out, {i, j}, scale(K(x * y), f));
            }
        }
    }
    return out;
}

// Paper display for C e_{nm} C^dag (unitary): rows 0..n+1, columns 0..m+1.
template <class K>
K emn_display(const Param<K>& p, long n, long m, long i, long j) {
    auto sp = [&](long e) {
        K r(1);
        for (long a = 0; a < e; ++a) r = r * p.s;
        return r;
    };
    if (i > n + 1 || j > m + 1) return K(0);
    if (i == n + 1 && j == m + 1) return p.t * p.t;
    if (i == n + 1) return -tpow(p, m - j + 1) * sp(j == 0 ? 1 : 2);
    if (j == m + 1) return -tpow(p, n - i + 1) * sp(i == 0 ? 1 : 2);
    return tpow(p, (n - i) + (m - j)) * sp((i == 0 ? 1 : 2) + (j == 0 ? 1 : 2));
}

}  // namespace bott
