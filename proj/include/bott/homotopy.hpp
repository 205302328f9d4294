#pragma once

#include <functional>
#include <string>

#include "bott/relabel.hpp"
#include "bott/report.hpp"
#include "bott/rotation.hpp"
#include "bott/toeplitz.hpp"

namespace bott {

struct EndpointMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAPerturbation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a(v) as an entry.
template <class K>
Entry<K> loop_entry(const CyclicLoop& a) {
    Entry<K> r;
    for (const auto& [k, c] : a.terms().terms()) r.add(k, lift<K>(c));
    return r;
}

template <class K>
Entry<K> v_entry(int d, int k = 1) { return entry_v<K>(d, k); }

// ---- stabilizing conjugation ----

// X A Y for an operator A on N (Toeplitz part plus finite part).
template <class K>
Op<K> rot_conjugate(const Op<K>& A, const Param<K>& p, RotVariant v = RotVariant::Unitary) {
    if (!A.on_N()) throw std::invalid_argument("rot_conjugate needs an operator on N");
    Op<K> R(A.d);
    for (const auto& [n, an] : A.pos.terms()) R = R + w_conj_closed(A.d, p, v, n).scaled(an);
    for (const auto& [ij, e] : conj_finite(A.fin, p, v)) fin_add(R.fin, ij, e);
    return R;
}

template <class K>
ToeplitzElement<K> rot_conjugate(const ToeplitzElement<K>& A, const Param<K>& p, RotVariant v = RotVariant::Unitary) {
    return ToeplitzElement<K>::from_op(rot_conjugate(A.as_op(), p, v));
}

// Matrices indexed by N x N, as finite maps.
template <class K>
using NNMat = std::map<std::pair<NN, NN>, Entry<K>>;

// Stabilization on N x N: the conjugation acts on the outer index. At t = 1 it is
// the relabeling (n, m) -> (n + 1, m).
template <class K>
NNMat<K> stabilize(const NNMat<K>& A, const Param<K>& p) {
    std::map<std::pair<long, long>, FinMap<K>> by_inner;
    for (const auto& [ij, e] : A) {
        if (ij.first.first < 0 || ij.first.second < 0 || ij.second.first < 0 || ij.second.second < 0)
            throw BadPartition("index outside N x N");
        fin_add(by_inner[{ij.first.second, ij.second.second}], {ij.first.first, ij.second.first}, e);
    }
    NNMat<K> out;
    for (const auto& [mm, F] : by_inner)
        for (const auto& [nn, e] : conj_finite(F, p, RotVariant::Unitary))
            if (!e.is_zero()) out[{{nn.first, mm.first}, {nn.second, mm.second}}] += e;
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Stabilization over an index set I carried onto N x N by eta.
template <class K, class I>
std::map<std::pair<I, I>, Entry<K>> stabilize(const std::map<std::pair<I, I>, Entry<K>>& A, const Bijection<I, NN>& eta,
                                              const Param<K>& p) {
    NNMat<K> B;
    try {
        B = relabel(A, eta);
    } catch (const NotBijective& e) {
        throw BadPartition(e.what());
    }
    return relabel(stabilize(B, p), invert(eta));
}

// ---- homotopy paths in unit groups ----

template <class K>
struct UnitOp {
    Op<K> fwd, inv;
};

template <class K>
struct HomotopyPath {
    std::function<UnitOp<K>(const CirclePoint&)> eval;
    CirclePoint start = CirclePoint::at(0, 1), end = CirclePoint::at(1, 0);
};

template <class K>
Param<K> param_for(const CirclePoint& p);
template <>
inline Param<Rational> param_for<Rational>(const CirclePoint& p) { return param(p); }
template <>
inline Param<CircleScalar> param_for<CircleScalar>(const CirclePoint& p) { return param_circle(p); }

// h(x) = f(x) f(1)^{-1} g(x)
template <class K>
HomotopyPath<K> concat(const HomotopyPath<K>& f, const HomotopyPath<K>& g) {
    UnitOp<K> f1 = f.eval(f.end), g0 = g.eval(g.start);
    if (f1.fwd != g0.fwd) throw EndpointMismatch("f(1) differs from g(0)");
    HomotopyPath<K> h;
    h.start = f.start;
    h.end = g.end;
    h.eval = [f, g, f1](const CirclePoint& x) {
        UnitOp<K> a = f.eval(x), b = g.eval(x);
        return UnitOp<K>{a.fwd * f1.inv * b.fwd, b.inv * f1.fwd * a.inv};
    };
    return h;
}

template <class K>
HomotopyPath<K> constant_path(const UnitOp<K>& u) {
    HomotopyPath<K> h;
    h.eval = [u](const CirclePoint&) { return u; };
    return h;
}

// ---- Bott involution ----

// B(a) = U(a) Q U(a)^{-1}
inline Op<Rational> bott_involution(const LoopUnit& a) {
    int d = a.dim();
    return Op<Rational>::laurent(a.forward) * Op<Rational>::Q(d) * Op<Rational>::laurent(a.inverse);
}

enum class InvertMode { Z1, Z2 };

// M = 1/2 (B - U(z) B U(z^{-1})), a finite matrix with M_{n,-m} = a_n b_m.
inline Op<Rational> bott_kernel(const Op<Rational>& B) {
    int d = B.d;
    Op<Rational> Q = Op<Rational>::Q(d);
    if (B.neg != Q.neg || B.pos != Q.pos) throw NotAPerturbation("B - Q is not finite");
    return (B - B.shift_conj()).scaled(entry_scalar<Rational>(d, Rational(1, 2)));
}

// Z1: z2 = 1 gives a(z) a(1)^{-1}. Z2: z1 = 1 gives a(1) a(z)^{-1}.
inline CyclicLoop bott_invert(const Op<Rational>& B, InvertMode mode = InvertMode::Z1) {
    int d = B.d;
    Op<Rational> M = bott_kernel(B);
    Laurent<QMat> r;
    for (const auto& [ij, e] : M.fin) {
        if (!v_free(e)) throw NotAPerturbation("entries depend on v");
        int k = static_cast<int>(mode == InvertMode::Z1 ? ij.first : -ij.second);
        r.add(k, constant_part(e));
    }
    return CyclicLoop(d, r);
}

// Full two-variable contraction sum_{n,k} z1^n M_{n,k} z2^{-k}, keyed by (n, -k).
inline std::map<std::pair<int, int>, QMat> bott_contract(const Op<Rational>& B) {
    std::map<std::pair<int, int>, QMat> r;
    for (const auto& [ij, e] : bott_kernel(B).fin)
        r[{static_cast<int>(ij.first), static_cast<int>(-ij.second)}] = constant_part(e);
    return r;
}

// ---- linearization ----

// U(a, theta, v) = delta_+ a(v) e00 + delta_- a(-v) e00 + G U(a) G^dag with
// G = diag(1, V^{-1} X V). The delta terms cancel those of the N x N closed forms,
// so the N x N block is sum_n a_n v^{n+j-i} (X W(z^n) Y)_{ij} without deltas.
template <class K>
Op<K> linearize_u(int d, const Sym<K>& a, const Param<K>& p, RotVariant var = RotVariant::Unitary) {
    Op<K> R = Op<K>::quadrant(d, a, a);
    for (const auto& [n, an] : a.terms()) {
        Op<K> cf = w_conj_closed(d, p, var, n, false);
        for (const auto& [ij, e] : cf.fin)
            fin_add(R.fin, ij, an * e.shifted(static_cast<int>(ij.second - ij.first + n)));
        // cross entries of U(a)
        for (long k = 0; k < n; ++k) {  // row k >= 0, column k - n < 0
            long j = k - n;
            for (long i = 0; i <= k + 1; ++i) {
                K x = rot_left(p, var, i, k);
                if (!detail::iz(x)) fin_add(R.fin, {i, j}, scale(x, an.shifted(static_cast<int>(k - i))));
            }
        }
        for (long i = n; i < 0; ++i) {  // row i < 0, column k = i - n >= 0
            long k = i - n;
            for (long j = 0; j <= k + 1; ++j) {
                K y = rot_right(p, var, k, j);
                if (!detail::iz(y)) fin_add(R.fin, {i, j}, scale(y, an.shifted(static_cast<int>(j - k))));
            }
        }
    }
    return R;
}

template <class K>
Op<K> linearize_u(const CyclicLoop& a, const Param<K>& p, RotVariant var = RotVariant::Unitary) {
    return linearize_u(a.dim(), lift_loop<K>(a), p, var);
}

// K(a, theta, v) = Lambda(v,Q)^{-1} U(a,theta,v) Lambda(v,Q) U(a,theta,1)^{-1}
template <class K>
Op<K> linearize_k(const LoopUnit& a, const Param<K>& p, RotVariant var = RotVariant::Unitary) {
    int d = a.dim();
    Op<K> L = Op<K>::lambda_Q(d, v_entry<K>(d, 1)), Li = Op<K>::lambda_Q(d, v_entry<K>(d, -1));
    Op<K> U1inv = linearize_u(a.inverse, p, var).subst_v(K(1));
    return Li * linearize_u(a.forward, p, var) * L * U1inv;
}

template <class K>
Op<K> linearize_k_inverse(const LoopUnit& a, const Param<K>& p, RotVariant var = RotVariant::Unitary) {
    int d = a.dim();
    Op<K> L = Op<K>::lambda_Q(d, v_entry<K>(d, 1)), Li = Op<K>::lambda_Q(d, v_entry<K>(d, -1));
    Op<K> U1 = linearize_u(a.forward, p, var).subst_v(K(1));
    return U1 * Li * linearize_u(a.inverse, p, var) * L;
}

// Lambda(v,Q)^{-1} Lambda(v, B(a))
template <class K>
Op<K> k_start(const LoopUnit& a) {
    int d = a.dim();
    Op<Rational> B = bott_involution(a);
    Op<K> BK = lift_op<K>(B);
    return Op<K>::lambda_Q(d, v_entry<K>(d, -1)) * lambda_scalar(v_entry<K>(d, 1), BK);
}

// E_Z(a(v) a(1)^{-1})
template <class K>
Op<K> k_end(const LoopUnit& a) {
    QMat a1i = a.forward.eval(1).inverse();
    return Op<K>::corner(a.dim(), loop_entry<K>(a.forward.scaled_right(a1i)));
}

// The entry pattern of U(a, pi/2, v): W(a(z^-1)) on the negatives, a(v) at (0,0),
// W(a(z)) moved to {1, 2, ...}, and the cross blocks moved off index 0 with
// factors -v (upper right) and -v^{-1} (lower left).
template <class K>
Entry<K> u_end_display(const Sym<K>& a, long i, long j) {
    auto coef = [&](long k) { return a.coeff(static_cast<int>(k)); };
    if (i < 0 && j < 0) return coef(i - j);
    if (i == 0 && j == 0) {
        Entry<K> r;
        for (const auto& [n, an] : a.terms()) r += an.shifted(n);
        return r;
    }
    if (i >= 1 && j >= 1) return coef(i - j);
    if (i >= 1 && j < 0) return -coef(i - 1 - j).shifted(-1);
    if (i < 0 && j >= 1) return -coef(i - j + 1).shifted(1);
    return Entry<K>();
}

// Dense evaluation of G U(a) G^dag + delta terms from the rotation entries and
// geometric tails only; independent of the closed forms.
template <class K>
Entry<K> linearize_u_entry_oracle(const Sym<K>& a, const Param<K>& p, RotVariant var, long i, long j) {
    Entry<K> r;
    if (i < 0 && j < 0) return a.coeff(static_cast<int>(i - j));
    if (i >= 0 && j >= 0) {
        for (const auto& [n, an] : a.terms()) {
            K x = tail_entry(p, var, n, i, j);
            if (!detail::iz(x)) r += scale(x, an.shifted(static_cast<int>(n + j - i)));
        }
        if (i == 0 && j == 0)
            for (const auto& [n, an] : a.terms()) {
                if (p.dplus) r += an.shifted(n);
                if (p.dminus) r += scale(K(n % 2 == 0 ? 1 : -1), an.shifted(n));
            }
        return r;
    }
    if (i >= 0) {  // sum over k >= 0 of (V^-1 X V)(i,k) U(a)(k,j)
        for (long k = std::max(0L, i - 1); k <= j + a.max_exp(); ++k) {
            const Entry<K>& u = a.coeff(static_cast<int>(k - j));
            if (u.is_zero()) continue;
            K x = rot_left(p, var, i, k);
            if (!detail::iz(x)) r += scale(x, u.shifted(static_cast<int>(k - i)));
        }
        return r;
    }
    for (long k = std::max(0L, j - 1); k <= i - a.min_exp(); ++k) {
        const Entry<K>& u = a.coeff(static_cast<int>(i - k));
        if (u.is_zero()) continue;
        K y = rot_right(p, var, k, j);
        if (!detail::iz(y)) r += scale(y, u.shifted(static_cast<int>(j - k)));
    }
    return r;
}

// (Y B X)(i, j) for the rotation pair; finite sums since rows of Y and columns of X are finite.
template <class K>
Entry<K> unconjugate_entry(const Op<K>& B, const Param<K>& p, RotVariant var, long i, long j) {
    Entry<K> r;
    for (long k = 0; k <= i + 1; ++k) {
        K y = rot_right(p, var, i, k);
        if (detail::iz(y)) continue;
        for (long l = 0; l <= j + 1; ++l) {
            K x = rot_left(p, var, l, j);
            if (!detail::iz(x)) r += scale(K(y * x), B.at(k, l));
        }
    }
    return r;
}

// v -> v^{-1} in every entry.
template <class K>
Op<K> v_reversed(const Op<K>& A) {
    auto f = [](const Entry<K>& e) { return e.reversed(); };
    Op<K> r(A.d);
    r.neg = A.neg.map(f);
    r.pos = A.pos.map(f);
    for (const auto& [ij, e] : A.fin) fin_add(r.fin, ij, f(e));
    return r;
}

// ---- checks ----

// Poly analogue of the conjugated matrix unit: col_n(Ct) (x) row_m(Ct').
template <class K>
K emn_display_poly(const Param<K>& p, long n, long m, long i, long j) {
    K u = K(1) - p.t * p.t;
    K left = i > n + 1 ? K(0) : i == n + 1 ? K(-p.t) : K(tpow(p, n - i) * u);
    K right = j > m + 1 ? K(0) : j == m + 1 ? K(-p.t) : j == 0 ? tpow(p, m) : K(tpow(p, m - j) * u);
    return left * right;
}

// Rotation identities at a point (or symbolically for CircleScalar).
template <class K>
void key_lemma_checks(const Param<K>& p, const std::string& where, int window, RotVariant var, Report& rep);

Report key_lemma_suite(const CirclePoint& p, int window, RotVariant var = RotVariant::Unitary);
Report key_lemma_symbolic(int window, RotVariant var = RotVariant::Unitary);

}  // namespace bott
