#pragma once

#include "bott/homotopy.hpp"
#include "bott/report.hpp"

namespace bott {

struct WrongKind : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingularMiddleBlock : std::domain_error {
    using std::domain_error::domain_error;
};
// Internal consistency failure: a band class the construction guarantees did not hold.
struct StripeClassViolation : std::logic_error {
    using std::logic_error::logic_error;
};

enum class StripeKind { L, R, Both };
const char* stripe_kind_name(StripeKind k);

// Lambda(s, Q) plus entries in rows m..n (L), columns m..n (R) or the box (Both).
template <class K>
struct StripePerturbation {
    int d = 1;
    Entry<K> s;
    StripeKind kind = StripeKind::Both;
    long m = 0, n = 0;
    FinMap<K> data;

    Op<K> base() const { return Op<K>::lambda_Q(d, s); }
    Op<K> op() const {
        Op<K> r = base();
        r.fin = data;
        return r;
    }
};

template <class K>
bool in_stripe(StripeKind kind, long m, long n, const Idx& ij) {
    bool row = ij.first >= m && ij.first <= n, col = ij.second >= m && ij.second <= n;
    if (kind == StripeKind::L) return row;
    if (kind == StripeKind::R) return col;
    return row && col;
}

// Reads A as a stripe perturbation of Lambda(s, Q); throws if it is not one.
template <class K>
StripePerturbation<K> as_stripe(const Op<K>& A, const Entry<K>& s, StripeKind kind, long m, long n) {
    if (m > 0 || n < 0) throw std::invalid_argument("stripe window must contain 0");
    int d = A.d;
    if (A.neg != Sym<K>(scale_entry(s, d)) || A.pos != Sym<K>(Op<K>::one_entry(d)))
        throw StripeClassViolation("base is not Lambda(s,Q)");
    StripePerturbation<K> r{d, s, kind, m, n, {}};
    for (const auto& [ij, e] : A.fin) {
        if (!in_stripe<K>(kind, m, n, ij))
            throw StripeClassViolation(std::string(stripe_kind_name(kind)) + "(" + std::to_string(m) + "," +
                                       std::to_string(n) + ") violated at (" + std::to_string(ij.first) + "," +
                                       std::to_string(ij.second) + ")");
        r.data.emplace(ij, e);
    }
    return r;
}

// Red_(m,n): drop the entries outside the box.
template <class K>
StripePerturbation<K> reduce(const StripePerturbation<K>& A) {
    StripePerturbation<K> r = A;
    r.kind = StripeKind::Both;
    r.data.clear();
    for (const auto& [ij, e] : A.data)
        if (in_stripe<K>(StripeKind::Both, A.m, A.n, ij)) r.data.emplace(ij, e);
    return r;
}

// C(t) = A + t (Red(A) - A)
template <class K>
Op<K> pert_path(const StripePerturbation<K>& A, const K& t) {
    Op<K> r = A.op();
    for (const auto& [ij, e] : A.data)
        if (!in_stripe<K>(StripeKind::Both, A.m, A.n, ij)) fin_add(r.fin, ij, scale(K(-t), e));
    return r;
}

// C(t)^{-1} = A^{-1} C(-t) A^{-1}
template <class K>
Op<K> pert_path_inverse(const StripePerturbation<K>& A, const Op<K>& Ainv, const K& t) {
    return Ainv * pert_path(A, K(-t)) * Ainv;
}

// Closed-form inverse of an L or R perturbation with v-free entries: invert the
// middle block M, then -s^{-1} M^{-1} L^- and -M^{-1} L^+ (transposed roles for R).
template <class K>
Op<K> stripe_inverse(const StripePerturbation<K>& A) {
    if (A.kind == StripeKind::Both) {
        StripePerturbation<K> L = A;
        L.kind = StripeKind::L;
        return stripe_inverse(L);
    }
    int d = A.d;
    if (!v_free(A.s)) throw WrongKind("closed-form inverse needs a numeric base");
    for (const auto& [ij, e] : A.data)
        if (!v_free(e)) throw WrongKind("closed-form inverse needs v-free entries");
    Mat<K> s = constant_part(A.s);
    K sv = s(0, 0), si = inv(sv);
    long w = A.n - A.m + 1;
    int N = static_cast<int>(w) * d;
    Mat<K> M = Mat<K>::zero(N);
    for (long i = 0; i < w; ++i) {
        Mat<K> base = constant_part(A.base().base_at(A.m + i, A.m + i));
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) M(i * d + a, i * d + b) = base(a, b);
    }
    bool L = A.kind == StripeKind::L;
    std::map<long, std::vector<std::pair<long, Mat<K>>>> outside;  // box index -> (outer index, block)
    for (const auto& [ij, e] : A.data) {
        auto [i, j] = ij;
        bool ib = i >= A.m && i <= A.n, jb = j >= A.m && j <= A.n;
        if (ib && jb) {
            Mat<K> c = constant_part(e);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) M((i - A.m) * d + a, (j - A.m) * d + b) += c(a, b);
        } else {
            outside[L ? i : j].push_back({L ? j : i, constant_part(e)});
        }
    }
    Mat<K> Mi;
    try {
        Mi = M.inverse();
    } catch (const std::domain_error&) {
        throw SingularMiddleBlock("middle block is singular");
    }
    auto block = [&](long i, long j) {
        Mat<K> c = Mat<K>::zero(d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) c(a, b) = Mi((i - A.m) * d + a, (j - A.m) * d + b);
        return c;
    };
    Op<K> r = Op<K>::lambda_Q(d, Entry<K>(Mat<K>::scalar(d, si)));
    for (long i = A.m; i <= A.n; ++i)
        for (long j = A.m; j <= A.n; ++j) {
            Mat<K> c = block(i, j);
            Mat<K> b0 = constant_part(r.base_at(i, j));
            fin_add(r.fin, {i, j}, Entry<K>(c - b0));
        }
    // outer parts: for L, row k of A carries X at column c outside: A^{-1}(i, c) = -sum_k Mi(i,k) X h(c)^{-1}
    for (const auto& [k, items] : outside)
        for (const auto& [c, X] : items) {
            K hc = c < 0 ? si : K(1);
            for (long i = A.m; i <= A.n; ++i) {
                if (L) fin_add(r.fin, {i, c}, Entry<K>(Mat<K>(-(hc * (block(i, k) * X)))));
                else fin_add(r.fin, {c, i}, Entry<K>(Mat<K>(-(hc * (X * block(k, i))))));
            }
        }
    return r;
}

template <class K>
Entry<K> scale_entry(const Entry<K>& s, int d) {
    if (s.is_zero()) return s;
    Entry<K> r;
    for (const auto& [k, m] : s.terms()) r.add(k, m.dim() == d ? m : Mat<K>::scalar(d, m(0, 0)));
    return r;
}

// ---- towers ----

template <class K>
struct TowerState {
    std::vector<long> M, N;                  // M[k], N[k] for k = 0..s
    std::vector<StripeKind> kinds;           // kind of Hhat_k, k = 1..s (index k-1)
    std::vector<Op<K>> Hhat, H, Hhat_inv, H_inv;  // index k-1 for k = 1..s
    std::vector<Op<Rational>> Qhat, Q;       // involution towers, index k-1
};

// Hhat_k = U(a_k,theta,v) H_{k-1} U(a_k,theta,1)^{-1}, H_k = Red(Hhat_k)
template <class K>
TowerState<K> tower(const LoopDecomposition& dec, const Param<K>& p);

// The involution towers Q_0 = Q, Qhat_k = U(a_k) Q_{k-1} U(a_k)^{-1}, Q_k = Red(Qhat_k).
void involution_tower(const LoopDecomposition& dec, std::vector<Op<Rational>>& Qhat, std::vector<Op<Rational>>& Q);

// Qtilde_k = U(a_s ... a_{k+1}) Q_k U(a_s ... a_{k+1})^{-1}, k = 0..s
std::vector<Op<Rational>> q_tilde(const LoopDecomposition& dec);

// U_F(a~, theta, h, v) with its inverse.
template <class K>
UnitOp<K> u_f(const LoopDecomposition& dec, const Param<K>& p, const Rational& h);

// The theta = 0 form: prod_k C_{Qhat_k, Q_k}(h/2) Qhat_k U(a_k).
UnitOp<Rational> u_f_linear(const LoopDecomposition& dec, const Rational& h);

// K_F = Lambda(v,Q)^{-1} U_F(v) Lambda(v,Q) U_F(1)^{-1}
template <class K>
Op<K> k_f(const LoopDecomposition& dec, const Param<K>& p, const Rational& h);

// B_F = Q_s, an (M_s,N_s)-perturbation of Q.
Op<Rational> b_f(const LoopDecomposition& dec);

struct FiniteOptions {
    std::vector<Rational> hs{Rational(0), Rational(1, 2), Rational(1)};
};

// All finite-linearization checks for one decomposition at one point.
Report finite_checks(const LoopDecomposition& dec, const CirclePoint& p, const FiniteOptions& opt = {});
// Checks that do not depend on the point: B_F, the linear form at h, transports.
Report finite_static_checks(const LoopDecomposition& dec, const FiniteOptions& opt = {});

}  // namespace bott
