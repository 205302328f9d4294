#pragma once

#include "bott/op.hpp"

namespace bott {

// W(symbol) + finite on N x N.
template <class K>
struct ToeplitzElement {
    int d = 1;
    Sym<K> symbol;
    FinMap<K> finite;

    Op<K> as_op() const {
        Op<K> r = Op<K>::toeplitz(d, symbol);
        r.fin = finite;
        return r;
    }
    static ToeplitzElement from_op(const Op<K>& A) {
        if (!A.on_N()) throw std::invalid_argument("operator is not supported on N x N");
        return ToeplitzElement{A.d, A.pos, A.fin};
    }
    Entry<K> at(long i, long j) const {
        Entry<K> e = symbol.coeff(static_cast<int>(i - j));
        auto it = finite.find({i, j});
        if (it != finite.end()) e += it->second;
        return e;
    }
    friend bool operator==(const ToeplitzElement& a, const ToeplitzElement& b) {
        return a.symbol == b.symbol && a.finite == b.finite;
    }
};

// (W(a) + p)(W(b) + q) = W(ab) + (-U^{+-}(a) U^{-+}(b) + W(a) q + p W(b) + p q)
template <class K>
ToeplitzElement<K> toeplitz_mul(const ToeplitzElement<K>& A, const ToeplitzElement<K>& B) {
    ToeplitzElement<K> C{A.d, A.symbol * B.symbol, {}};
    // anomalous term: rows i >= 0, columns j >= 0, summed over k < 0
    for (const auto& [p, x] : A.symbol.terms())
        for (const auto& [q, y] : B.symbol.terms())
            for (long k = std::max(-p, q); k <= -1; ++k) fin_add(C.finite, {k + p, k - q}, -(x * y));
    for (const auto& [kj, f] : B.finite)
        for (const auto& [p, x] : A.symbol.terms())
            if (kj.first + p >= 0) fin_add(C.finite, {kj.first + p, kj.second}, x * f);
    for (const auto& [ik, f] : A.finite)
        for (const auto& [q, y] : B.symbol.terms())
            if (ik.second - q >= 0) fin_add(C.finite, {ik.first, ik.second - q}, f * y);
    for (const auto& [ik, f] : A.finite)
        for (const auto& [kj, g] : B.finite)
            if (ik.second == kj.first) fin_add(C.finite, {ik.first, kj.second}, f * g);
    return C;
}

// Hankel block Y(a) on N x N: entry (i, j) = a_{-1-i-j}.
template <class K>
Op<K> hankel_Y(int d, const Sym<K>& a) {
    Op<K> r(d);
    for (const auto& [p, x] : a.terms())
        for (long i = 0; i <= -1 - p; ++i) fin_add(r.fin, {i, -1 - p - i}, x);
    return r;
}

template <class K>
Sym<K> symbol_of(const ToeplitzElement<K>& A) { return A.symbol; }

}  // namespace bott
