#pragma once

#include "bott/homotopy.hpp"

namespace bott {

// Operators on {1,2} x Z as 2 x 2 blocks of operators on Z.
template <class K>
struct Op2 {
    Op<K> b[2][2];

    static Op2 identity(int d) {
        Op2 r;
        r.b[0][0] = r.b[1][1] = Op<K>::identity(d);
        r.b[0][1] = r.b[1][0] = Op<K>(d);
        return r;
    }
    static Op2 diag(const Op<K>& x, const Op<K>& y) {
        Op2 r;
        r.b[0][0] = x;
        r.b[1][1] = y;
        r.b[0][1] = r.b[1][0] = Op<K>(x.d);
        return r;
    }
    Op2 operator-() const {
        Op2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.b[i][j] = -b[i][j];
        return r;
    }
    friend Op2 operator+(const Op2& x, const Op2& y) {
        Op2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.b[i][j] = x.b[i][j] + y.b[i][j];
        return r;
    }
    friend Op2 operator-(const Op2& x, const Op2& y) { return x + (-y); }
    friend Op2 operator*(const Op2& x, const Op2& y) {
        Op2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.b[i][j] = x.b[i][0] * y.b[0][j] + x.b[i][1] * y.b[1][j];
        return r;
    }
    friend bool operator==(const Op2& x, const Op2& y) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (x.b[i][j] != y.b[i][j]) return false;
        return true;
    }
    friend bool operator!=(const Op2& x, const Op2& y) { return !(x == y); }
    bool is_finite() const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!b[i][j].is_finite()) return false;
        return true;
    }
};

template <class K>
bool is_zero(const Op2<K>& A) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!is_zero(A.b[i][j])) return false;
    return true;
}

template <class K>
Op2<K> half(const Op2<K>& A) {
    Op2<K> r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.b[i][j] = half(A.b[i][j]);
    return r;
}

template <class R>
void gfin_add(std::map<Idx, R>& m, const Idx& ij, const R& x) {
    if (detail::iz(x)) return;
    auto it = m.find(ij);
    if (it == m.end()) {
        m.emplace(ij, x);
        return;
    }
    it->second = it->second + x;
    if (detail::iz(it->second)) m.erase(it);
}

// Quadrant-plus-finite operator on Z with entries in an algebra R (nested level).
template <class R>
struct GOp {
    Laurent<R> neg, pos;
    std::map<Idx, R> fin;

    static GOp quadrant(Laurent<R> n, Laurent<R> p) { return GOp{std::move(n), std::move(p), {}}; }
    static GOp identity(const R& one) { return quadrant(Laurent<R>(one), Laurent<R>(one)); }
    static GOp identity_N(const R& one) { return quadrant(Laurent<R>(), Laurent<R>(one)); }
    static GOp laurent(const Laurent<R>& a) {
        GOp r = quadrant(a, a);
        for (const auto& [p, x] : a.terms()) {
            for (long i = 0; i < p; ++i) gfin_add(r.fin, {i, i - p}, x);
            for (long i = p; i < 0; ++i) gfin_add(r.fin, {i, i - p}, x);
        }
        return r;
    }

    R base_at(long i, long j) const {
        if (i < 0 && j < 0) return neg.coeff(static_cast<int>(i - j));
        if (i >= 0 && j >= 0) return pos.coeff(static_cast<int>(i - j));
        return R();
    }
    R at(long i, long j) const {
        R e = base_at(i, j);
        auto it = fin.find({i, j});
        if (it != fin.end()) e = e + it->second;
        return e;
    }
    bool on_N() const {
        if (!neg.is_zero()) return false;
        for (const auto& [ij, e] : fin)
            if (ij.first < 0 || ij.second < 0) return false;
        return true;
    }

    GOp operator-() const {
        GOp r{-neg, -pos, {}};
        for (const auto& [ij, e] : fin) r.fin.emplace(ij, -e);
        return r;
    }
    friend GOp operator+(const GOp& a, const GOp& b) {
        GOp r = a;
        r.neg += b.neg;
        r.pos += b.pos;
        for (const auto& [ij, e] : b.fin) gfin_add(r.fin, ij, e);
        return r;
    }
    friend GOp operator-(const GOp& a, const GOp& b) { return a + (-b); }
    friend bool operator==(const GOp& a, const GOp& b) { return a.neg == b.neg && a.pos == b.pos && a.fin == b.fin; }
    friend bool operator!=(const GOp& a, const GOp& b) { return !(a == b); }

    friend GOp operator*(const GOp& A, const GOp& B) {
        GOp C{A.neg * B.neg, A.pos * B.pos, {}};
        for (const auto& [p, x] : A.pos.terms())
            for (const auto& [q, y] : B.pos.terms())
                for (long k = std::max<long>(-p, q); k <= -1; ++k) gfin_add(C.fin, {k + p, k - q}, R(-(x * y)));
        for (const auto& [p, x] : A.neg.terms())
            for (const auto& [q, y] : B.neg.terms())
                for (long k = 0; k <= std::min<long>(-p - 1, q - 1); ++k) gfin_add(C.fin, {k + p, k - q}, R(-(x * y)));
        for (const auto& [kj, f] : B.fin) {
            long k = kj.first;
            const Laurent<R>& s = k < 0 ? A.neg : A.pos;
            for (const auto& [p, x] : s.terms()) {
                long i = k + p;
                if ((i < 0) == (k < 0)) gfin_add(C.fin, {i, kj.second}, R(x * f));
            }
        }
        for (const auto& [ik, f] : A.fin) {
            long k = ik.second;
            const Laurent<R>& s = k < 0 ? B.neg : B.pos;
            for (const auto& [q, y] : s.terms()) {
                long j = k - q;
                if ((j < 0) == (k < 0)) gfin_add(C.fin, {ik.first, j}, R(f * y));
            }
        }
        std::map<long, std::vector<std::pair<long, const R*>>> rows;
        for (const auto& [kj, g] : B.fin) rows[kj.first].push_back({kj.second, &g});
        for (const auto& [ik, f] : A.fin) {
            auto it = rows.find(ik.second);
            if (it == rows.end()) continue;
            for (const auto& [j, g] : it->second) gfin_add(C.fin, {ik.first, j}, R(f * *g));
        }
        return C;
    }
};

// Largest |i - j| carried by A.
template <class R>
long gop_band(const GOp<R>& A) {
    long b = 0;
    for (const auto* L : {&A.neg, &A.pos})
        for (const auto& [p, x] : L->terms()) b = std::max<long>(b, std::abs(p));
    for (const auto& [ij, x] : A.fin) b = std::max(b, std::abs(ij.first - ij.second));
    return b;
}

// Dense check of A B C on [lo, hi) against P, away from the window edge.
template <class R>
bool window_product_check(const std::vector<const GOp<R>*>& fs, const GOp<R>& P, long lo, long hi,
                          long* compared = nullptr) {
    long n = hi - lo, margin = 0;
    for (std::size_t f = 0; f + 1 < fs.size(); ++f) margin += gop_band(*fs[f]);
    auto dense = [&](const GOp<R>& A) {
        std::vector<R> m(n * n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) m[i * n + j] = A.at(lo + i, lo + j);
        return m;
    };
    std::vector<R> acc = dense(*fs[0]);
    for (std::size_t f = 1; f < fs.size(); ++f) {
        std::vector<R> b = dense(*fs[f]), c(n * n);
        for (long i = 0; i < n; ++i)
            for (long k = 0; k < n; ++k) {
                const R& x = acc[i * n + k];
                if (detail::iz(x)) continue;
                for (long j = 0; j < n; ++j)
                    if (!detail::iz(b[k * n + j])) c[i * n + j] = c[i * n + j] + x * b[k * n + j];
            }
        acc = std::move(c);
    }
    long cnt = 0;
    for (long i = margin; i < n - margin; ++i)
        for (long j = margin; j < n - margin; ++j) {
            if (!(acc[i * n + j] == P.at(lo + i, lo + j))) return false;
            ++cnt;
        }
    if (compared) *compared = cnt;
    return true;
}

// k^{+}, k^{-}, k^{++}, k^{+-}, k^{-+}, k^{--} for an involution Q.
template <class R>
struct QSplit {
    R plus, minus, pp, pm, mp, mm;
};

template <class R>
QSplit<R> qsplit(const R& Q, const R& k, const R& one) {
    R Pp = half(one + Q), Pm = half(one - Q);
    R QkQ = Q * k * Q;
    return {half(k + QkQ), half(k - QkQ), Pp * k * Pp, Pp * k * Pm, Pm * k * Pp, Pm * k * Pm};
}

struct NotInvolution : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// L(Q, k) = W(Lambda(z,Q)) k W(Lambda(z^-1,Q)) on N: diagonal k^+ with corner k^{++},
// super-diagonal k^{+-}, sub-diagonal k^{-+}.
template <class R>
GOp<R> l_op(const R& Q, const R& k, const R& one) {
    if (Q * Q != one) throw NotInvolution("Q^2 != 1");
    QSplit<R> sp = qsplit(Q, k, one);
    Laurent<R> sym;
    sym.add(0, sp.plus);
    sym.add(-1, sp.pm);
    sym.add(1, sp.mp);
    GOp<R> r = GOp<R>::quadrant(Laurent<R>(), sym);
    gfin_add(r.fin, {0, 0}, R(-sp.mm));
    return r;
}

// Unital extension: 1 + L(Q, k - 1).
template <class R>
GOp<R> l_hat(const R& Q, const R& k, const R& one) {
    return GOp<R>::identity_N(one) + l_op(Q, R(k - one), one);
}

// Inflation of L(Q, k) for Q the involution of Z: the N-part of the corner is spread
// over the outer N with inner index 0. Unital extension.
template <class K>
GOp<Op<K>> l_inflate(const Op<K>& k) {
    int d = k.d;
    Op<K> one = Op<K>::identity(d), Q = Op<K>::Q(d);
    Op<K> x = k - one;
    QSplit<Op<K>> sp = qsplit(Q, x, one);
    GOp<Op<K>> r;
    r.neg.add(0, sp.plus);
    r.neg.add(1, sp.pm);
    r.neg.add(-1, sp.mp);
    auto e = [&](long i, long j) { return Op<K>::unit_at(d, i, j, Op<K>::one_entry(d)); };
    // outer N x N: e_{0i} x^{++} e_{j0} = x^{++}_{ij} e_00
    for (const auto& [p, c] : sp.pp.pos.terms()) r.pos.add(p, Op<K>::unit_at(d, 0, 0, c));
    for (const auto& [ij, c] : sp.pp.fin) gfin_add(r.fin, ij, Op<K>::unit_at(d, 0, 0, c));
    // x^{-+} has finitely many nonzero columns j >= 0, x^{+-} finitely many rows i >= 0
    std::set<long> cols, rows;
    for (const auto& [ij, c] : sp.mp.fin) cols.insert(ij.second);
    for (const auto& [ij, c] : sp.pm.fin) rows.insert(ij.first);
    for (long j : cols) gfin_add(r.fin, {-1, j}, Op<K>(sp.mp * e(j, 0)));
    for (long i : rows) gfin_add(r.fin, {i, -1}, Op<K>(e(0, i) * sp.pm));
    return GOp<Op<K>>::identity(one) + r;
}

// ---- Toeplitz stabilization and the symbol killer ----

// V^{-1} X V F V^{-1} Y V for finite F on N.
template <class K>
FinMap<K> graded_conj_finite(const FinMap<K>& F, const Param<K>& p, RotVariant v) {
    FinMap<K> out;
    for (const auto& [kl, f] : F) {
        auto [k, l] = kl;
        for (long i = 0; i <= k + 1; ++i) {
            K x = rot_left(p, v, i, k);
            if (detail::iz(x)) continue;
            for (long j = 0; j <= l + 1; ++j) {
                K y = rot_right(p, v, l, j);
                if (!detail::iz(y)) fin_add(out, {i, j}, scale(K(x * y), f.shifted(static_cast<int>(k - i + j - l))));
            }
        }
    }
    return out;
}

// T(A, theta, v) = delta_+ s(v) e00 + delta_- s(-v) e00 + V^{-1} X V A V^{-1} Y V.
template <class K>
Op<K> toeplitz_homotopy(const Op<K>& A, const Param<K>& p, RotVariant var = RotVariant::Unitary) {
    if (!A.on_N()) throw std::invalid_argument("toeplitz_homotopy needs an operator on N");
    Op<K> R = Op<K>::toeplitz(A.d, A.pos);
    for (const auto& [n, an] : A.pos.terms()) {
        Op<K> cf = w_conj_closed(A.d, p, var, n, false);
        for (const auto& [ij, e] : cf.fin)
            fin_add(R.fin, ij, an * e.shifted(static_cast<int>(ij.second - ij.first + n)));
    }
    for (const auto& [ij, e] : graded_conj_finite(A.fin, p, var)) fin_add(R.fin, ij, e);
    return R;
}

// Toeplitz units on N with their inverses and symbols.
struct ToeplitzUnit {
    Op<Rational> fwd, inv;
    LoopUnit symbol;
};

// Glue four d x d operators into one 2d x 2d operator.
template <class K>
Op<K> op_blocks(const Op<K>& a, const Op<K>& b, const Op<K>& c, const Op<K>& e) {
    int d = a.d;
    auto glue = [d](const Entry<K>* parts[4]) {
        std::set<int> ks;
        for (int q = 0; q < 4; ++q)
            for (const auto& [k, m] : parts[q]->terms()) ks.insert(k);
        Entry<K> r;
        for (int k : ks) {
            Mat<K> M = Mat<K>::zero(2 * d);
            for (int q = 0; q < 4; ++q) {
                Mat<K> m = parts[q]->coeff(k);
                if (m.dim() == 0) continue;
                int r0 = (q / 2) * d, c0 = (q % 2) * d;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) M(r0 + i, c0 + j) = m(i, j);
            }
            r.add(k, M);
        }
        return r;
    };
    const Op<K>* ops[4] = {&a, &b, &c, &e};
    Op<K> R(2 * d);
    for (int side = 0; side < 2; ++side) {
        std::set<int> ks;
        for (auto* o : ops)
            for (const auto& [k, x] : (side ? o->pos : o->neg).terms()) ks.insert(k);
        for (int k : ks) {
            const Entry<K>* parts[4];
            for (int q = 0; q < 4; ++q) parts[q] = &(side ? ops[q]->pos : ops[q]->neg).coeff(k);
            (side ? R.pos : R.neg).add(k, glue(parts));
        }
    }
    std::set<Idx> idx;
    for (auto* o : ops)
        for (const auto& [ij, x] : o->fin) idx.insert(ij);
    Entry<K> zero;
    for (const auto& ij : idx) {
        const Entry<K>* parts[4];
        for (int q = 0; q < 4; ++q) {
            auto it = ops[q]->fin.find(ij);
            parts[q] = it == ops[q]->fin.end() ? &zero : &it->second;
        }
        fin_add(R.fin, ij, glue(parts));
    }
    return R;
}

// For T = W(a), S = W(a^{-1}): [[2T - TST, TS - 1], [1 - ST, S]], a unit with symbol a (+) a^{-1}.
ToeplitzUnit toeplitz_lift(const LoopUnit& a);
ToeplitzUnit toeplitz_corner(const QMat& u);

// Z(A, theta, v) = T(A, theta, v) T(A, theta, 1)^{-1}
template <class K>
Op<K> symbol_killer(const ToeplitzUnit& A, const Param<K>& p) {
    Op<K> f = lift_op<K>(A.fwd), i = lift_op<K>(A.inv);
    return toeplitz_homotopy(f, p) * toeplitz_homotopy(i, p).subst_v(K(1));
}

// E(s(+-v) s(+-1)^{-1}) on N.
template <class K>
Op<K> symbol_killer_end(const ToeplitzUnit& A, int sign) {
    CyclicLoop a = A.symbol.forward;
    QMat a1i = a.eval(sign).inverse();
    Entry<K> e;
    for (const auto& [k, c] : a.terms().terms())
        e.add(k, lift<K>(sign < 0 && (k % 2) ? QMat(-c * a1i) : QMat(c * a1i)));
    return Op<K>::corner_N(a.dim(), e);
}

// ---- symbol section ----

struct SectionResult {
    GOp<Op<Rational>> inflated, mixer, laurent;  // the three factors
    GOp<Op<Rational>> product;          // L~(k) Lambda(k^{-1}, Q) U(k Lambda(z^{-1},Q) k^{-1} Lambda(z,Q))
    Laurent<Op<Rational>> want_symbol;  // E_Z(a(z)) k Lambda(z^{-1},Q) k^{-1} Lambda(z,Q)
    long split = 0;                     // product = 1 below split, N(k) from split on
    bool block_diagonal = false;
};

SectionResult symbol_section(const LoopUnit& a);

// ---- contraction steps ----

template <class K>
using Fin2 = std::map<std::pair<std::pair<int, long>, std::pair<int, long>>, Entry<K>>;

template <class K>
struct StepB {
    Op2<K> S, Sinv;
    Laurent<Op2<K>> symbol;       // Lambda(z,-Q) S Lambda(z^{-1},-Q) S^{-1}
    GOp<Op2<K>> value, inverse;   // L(-Q, S) S^{-1} and its inverse
};

template <class K>
StepB<K> contract_step_b(const LoopUnit& a, const Param<K>& p);

template <class K>
Laurent<Op2<K>> step_b_symbol_start(const LoopUnit& a);

template <class K>
struct StepC {
    Op<K> k, kinv;             // k(theta) and its inverse
    GOp<Op<K>> value, inverse;  // k(theta) L(Q, k(theta))^{-1} and its inverse
};

// k0 = 1 + F on N with inverse 1 + G (finite F, G).
template <class K>
StepC<K> contract_step_c(const FinMap<Rational>& F, const FinMap<Rational>& G, int d, const Param<K>& p);

}  // namespace bott
