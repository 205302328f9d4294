#include "bott/finite.hpp"

namespace bott {

const char* stripe_kind_name(StripeKind k) {
    switch (k) {
        case StripeKind::L: return "L";
        case StripeKind::R: return "R";
        default: return "box";
    }
}

namespace {

StripeKind kind_of(const ClassWindow& w) { return w.tag == 'R' ? StripeKind::R : StripeKind::L; }

template <class K>
Entry<K> scalar_entry(int d, int k, const K& c) { return Entry<K>::monomial(k, Mat<K>::scalar(d, c)); }

std::string fmt_box(long m, long n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

}  // namespace

template <class K>
TowerState<K> tower(const LoopDecomposition& dec, const Param<K>& p) {
    std::string why;
    if (!dec.windows_ok(&why)) throw std::invalid_argument("decomposition: " + why);
    int d = dec.dim();
    Entry<K> v = scalar_entry<K>(d, 1, K(1)), vi = scalar_entry<K>(d, -1, K(1));
    Op<K> H = Op<K>::lambda_Q(d, v), Hi = Op<K>::lambda_Q(d, vi);
    TowerState<K> T;
    T.M.push_back(0);
    T.N.push_back(0);
    for (int k = 1; k <= dec.size(); ++k) {
        const LoopUnit& a = dec.factors[k - 1];
        long Mk = dec.cls.M(k), Nk = dec.cls.N(k);
        StripeKind kind = kind_of(dec.cls.windows[k - 1]);
        Op<K> Uv = linearize_u(a.forward, p), Uvi = linearize_u(a.inverse, p);
        Op<K> Hh = Uv * H * Uvi.subst_v(K(1));
        Op<K> Hhi = Uv.subst_v(K(1)) * Hi * Uvi;
        StripePerturbation<K> sp = as_stripe(Hh, v, kind, Mk, Nk);
        StripePerturbation<K> spi = as_stripe(Hhi, vi, kind, Mk, Nk);
        H = reduce(sp).op();
        Hi = reduce(spi).op();
        if (H * Hi != Op<K>::identity(d)) throw StripeClassViolation("reduction of the inverse is not the inverse");
        T.M.push_back(Mk);
        T.N.push_back(Nk);
        T.kinds.push_back(kind);
        T.Hhat.push_back(Hh);
        T.Hhat_inv.push_back(Hhi);
        T.H.push_back(H);
        T.H_inv.push_back(Hi);
    }
    return T;
}

void involution_tower(const LoopDecomposition& dec, std::vector<Op<Rational>>& Qhat, std::vector<Op<Rational>>& Q) {
    int d = dec.dim();
    Op<Rational> q = Op<Rational>::Q(d);
    Entry<Rational> m1 = entry_scalar<Rational>(d, Rational(-1));
    Qhat.clear();
    Q.clear();
    for (int k = 1; k <= dec.size(); ++k) {
        const LoopUnit& a = dec.factors[k - 1];
        Op<Rational> qh = Op<Rational>::laurent(a.forward) * q * Op<Rational>::laurent(a.inverse);
        StripePerturbation<Rational> sp = as_stripe(qh, m1, kind_of(dec.cls.windows[k - 1]), dec.cls.M(k), dec.cls.N(k));
        q = reduce(sp).op();
        Qhat.push_back(qh);
        Q.push_back(q);
    }
}

std::vector<Op<Rational>> q_tilde(const LoopDecomposition& dec) {
    std::vector<Op<Rational>> Qh, Q;
    involution_tower(dec, Qh, Q);
    int s = dec.size(), d = dec.dim();
    std::vector<Op<Rational>> out;
    for (int k = 0; k <= s; ++k) {
        CyclicLoop f = CyclicLoop::one(d), fi = CyclicLoop::one(d);
        for (int j = s; j > k; --j) {
            f = f * dec.factors[j - 1].forward;
            fi = dec.factors[j - 1].inverse * fi;
        }
        // f = a_s ... a_{k+1}
        Op<Rational> qk = k == 0 ? Op<Rational>::Q(d) : Q[k - 1];
        out.push_back(Op<Rational>::laurent(f) * qk * Op<Rational>::laurent(fi));
    }
    return out;
}

template <class K>
UnitOp<K> u_f(const LoopDecomposition& dec, const Param<K>& p, const Rational& h) {
    TowerState<K> T = tower(dec, p);
    int d = dec.dim();
    Entry<K> v = scalar_entry<K>(d, 1, K(1)), m1 = entry_scalar<K>(d, K(-1));
    UnitOp<K> r{Op<K>::identity(d), Op<K>::identity(d)};
    K hk(h), h2(Rational(h / 2));
    for (int k = 1; k <= dec.size(); ++k) {
        const LoopUnit& a = dec.factors[k - 1];
        long Mk = T.M[k], Nk = T.N[k];
        StripeKind kind = T.kinds[k - 1];
        const Op<K>& Hv = T.Hhat[k - 1];
        const Op<K>& Hvi = T.Hhat_inv[k - 1];
        Op<K> Hm = Hv.subst_v(K(-1)), Hmi = Hvi.subst_v(K(-1));
        StripePerturbation<K> spv = as_stripe(Hv, v, kind, Mk, Nk), spm = as_stripe(Hm, m1, kind, Mk, Nk);
        Op<K> Cv = pert_path(spv, hk), Cvi = pert_path_inverse(spv, Hvi, hk);
        Op<K> Cm = pert_path(spm, h2), Cmi = pert_path_inverse(spm, Hmi, h2);
        Op<K> F = Cv * Cmi * Hm * Hvi * linearize_u(a.forward, p);
        Op<K> Fi = linearize_u(a.inverse, p) * Hv * Hmi * Cm * Cvi;
        r.fwd = F * r.fwd;
        r.inv = r.inv * Fi;
    }
    return r;
}

UnitOp<Rational> u_f_linear(const LoopDecomposition& dec, const Rational& h) {
    std::vector<Op<Rational>> Qh, Q;
    involution_tower(dec, Qh, Q);
    int d = dec.dim();
    Entry<Rational> m1 = entry_scalar<Rational>(d, Rational(-1));
    UnitOp<Rational> r{Op<Rational>::identity(d), Op<Rational>::identity(d)};
    for (int k = 1; k <= dec.size(); ++k) {
        const LoopUnit& a = dec.factors[k - 1];
        const Op<Rational>& q = Qh[k - 1];
        StripePerturbation<Rational> sp = as_stripe(q, m1, kind_of(dec.cls.windows[k - 1]), dec.cls.M(k), dec.cls.N(k));
        Op<Rational> C = pert_path(sp, Rational(h / 2)), Ci = pert_path_inverse(sp, q, Rational(h / 2));
        r.fwd = C * q * Op<Rational>::laurent(a.forward) * r.fwd;
        r.inv = r.inv * Op<Rational>::laurent(a.inverse) * q * Ci;
    }
    return r;
}

template <class K>
Op<K> k_f(const LoopDecomposition& dec, const Param<K>& p, const Rational& h) {
    int d = dec.dim();
    UnitOp<K> u = u_f(dec, p, h);
    Op<K> L = Op<K>::lambda_Q(d, scalar_entry<K>(d, 1, K(1))), Li = Op<K>::lambda_Q(d, scalar_entry<K>(d, -1, K(1)));
    return Li * u.fwd * L * u.inv.subst_v(K(1));
}

Op<Rational> b_f(const LoopDecomposition& dec) {
    std::vector<Op<Rational>> Qh, Q;
    involution_tower(dec, Qh, Q);
    return Q.empty() ? Op<Rational>::Q(dec.dim()) : Q.back();
}

template TowerState<Rational> tower(const LoopDecomposition&, const Param<Rational>&);
template TowerState<CircleScalar> tower(const LoopDecomposition&, const Param<CircleScalar>&);
template UnitOp<Rational> u_f(const LoopDecomposition&, const Param<Rational>&, const Rational&);
template UnitOp<CircleScalar> u_f(const LoopDecomposition&, const Param<CircleScalar>&, const Rational&);
template Op<Rational> k_f(const LoopDecomposition&, const Param<Rational>&, const Rational&);
template Op<CircleScalar> k_f(const LoopDecomposition&, const Param<CircleScalar>&, const Rational&);

namespace {

template <class K>
bool box_perturbation_of(const Op<K>& A, const Op<K>& base, long m, long n) {
    Op<K> D = A - base;
    if (!D.is_finite()) return false;
    for (const auto& [ij, e] : D.fin)
        if (ij.first < m || ij.first > n || ij.second < m || ij.second > n) return false;
    return true;
}

template <class K>
void point_checks(Report& R, const LoopDecomposition& dec, const CirclePoint& pt, const FiniteOptions& opt) {
    const std::string suite = "finite";
    Param<K> p = param_for<K>(pt);
    std::string inst = "s=" + std::to_string(dec.size()) + " d=" + std::to_string(dec.dim()) + " at " + pt.str();
    int d = dec.dim(), s = dec.size();
    LoopUnit a = dec.product();
    Op<K> I = Op<K>::identity(d);
    Entry<K> v = scalar_entry<K>(d, 1, K(1));
    Op<K> L = Op<K>::lambda_Q(d, v), Li = Op<K>::lambda_Q(d, scalar_entry<K>(d, -1, K(1)));

    TowerState<K> T;
    try {
        T = tower(dec, p);
    } catch (const StripeClassViolation& e) {
        R.add(suite, "tower stripe classes hold", inst, false, e.what());
        return;
    }
    R.add(suite, "tower stripe classes hold", inst, true,
          "box " + fmt_box(T.M[s], T.N[s]));
    bool o = true;
    for (int k = 0; k < s; ++k) o = o && T.H[k].subst_v(K(1)) == I && T.Hhat[k].subst_v(K(1)) == I;
    R.add(suite, "H_k and Hhat_k at v=1 are the identity", inst, o);

    // pert_path on the top of the tower
    if (s > 0) {
        StripePerturbation<K> sp = as_stripe(T.Hhat[s - 1], v, T.kinds[s - 1], T.M[s], T.N[s]);
        const Op<K>& A = T.Hhat[s - 1];
        const Op<K>& Ai = T.Hhat_inv[s - 1];
        K t3(Rational(1, 3)), t6(Rational(1, 6));
        R.add(suite, "interpolation path: C(0) = A, C(1) = Red(A)", inst,
              pert_path(sp, K(0)) == A && pert_path(sp, K(1)) == T.H[s - 1]);
        bool inv = true;
        for (const K& t : {t3, K(Rational(-2, 5)), K(Rational(7, 4))})
            inv = inv && pert_path(sp, t) * pert_path_inverse(sp, Ai, t) == I;
        R.add(suite, "interpolation inverse: C(t) A^-1 C(-t) A^-1 = 1", inst + " t in {1/3,-2/5,7/4}", inv);
        R.add(suite, "interpolation halving: C(t) = C(t/2) A^-1 C(t/2)", inst,
              pert_path(sp, t3) == pert_path(sp, t6) * Ai * pert_path(sp, t6));
    }

    Op<K> Ua = linearize_u(a.forward, p);
    std::map<std::string, UnitOp<K>> uf;
    for (const Rational& h : opt.hs) {
        UnitOp<K> u = u_f(dec, p, h);
        std::string hi = inst + " h=" + to_string(h);
        R.add(suite, "U_F inverse is two-sided", hi, u.fwd * u.inv == I && u.inv * u.fwd == I);
        if (h == 0) R.add(suite, "U_F at h=0 equals U(a,theta,v)", hi, u.fwd == Ua);
        if (h == 1) {
            Op<K> rhs = T.H.empty() ? L : T.H[s - 1];
            R.add(suite, "U_F at h=1: U_F(v) = H_s(v) U_F(1) Lambda(v,Q)^-1", hi,
                  u.fwd == rhs * u.fwd.subst_v(K(1)) * Li);
        }
        if (pt.delta_plus()) R.add(suite, "U_F at theta=pi/2 equals U(a,pi/2,v) for every h", hi, u.fwd == Ua);
        if (!pt.symbolic && pt.t == 0 && pt.s == 1) {
            UnitOp<Rational> lin = u_f_linear(dec, h);
            R.add(suite, "U_F at theta=0 equals the involution-tower form", hi, u.fwd == lift_op<K>(lin.fwd));
        }

        Op<K> kf = Li * u.fwd * L * u.inv.subst_v(K(1));
        R.add(suite, "K_F is pointed", hi, kf.subst_v(K(1)) == I);
        if (h == 0) R.add(suite, "K_F at h=0 equals K(a,theta)", hi, kf == linearize_k(a, p));
        if (h == 1) {
            Op<K> Hs = T.H.empty() ? L : T.H[s - 1];
            R.add(suite, "K_F at h=1 equals Lambda(v,Q)^-1 times the nested reduction", hi, kf == Li * Hs);
            R.add(suite, "K_F at h=1 is an (M_s,N_s)-perturbation of 1", hi,
                  box_perturbation_of(kf, I, T.M[s], T.N[s]), "box " + fmt_box(T.M[s], T.N[s]));
        }
        if (pt.delta_plus()) R.add(suite, "K_F at theta=pi/2 is E_Z(a(v)a(1)^-1) for every h", hi, kf == k_end<K>(a));
        if (!pt.symbolic && pt.t == 0 && pt.s == 1) {
            UnitOp<Rational> lin = u_f_linear(dec, h);
            Op<K> want = Li * lift_op<K>(lin.fwd) * L * lift_op<K>(lin.inv);
            R.add(suite, "K_F at theta=0 is the conjugated linear form", hi, kf == want);
        }
    }
    if (!pt.symbolic && pt.t == 0 && pt.s == 1) {
        std::vector<Op<Rational>> Qh, Q;
        involution_tower(dec, Qh, Q);
        bool ok = true;
        for (int k = 0; k < s; ++k) ok = ok && lift_op<K>(Q[k]) == T.H[k].subst_v(K(-1));
        R.add(suite, "Q_k = H_k(theta=0, v=-1)", inst, ok);
    }
}

}  // namespace

Report finite_checks(const LoopDecomposition& dec, const CirclePoint& p, const FiniteOptions& opt) {
    Report R;
    if (p.symbolic) point_checks<CircleScalar>(R, dec, p, opt);
    else point_checks<Rational>(R, dec, p, opt);
    return R;
}

Report finite_static_checks(const LoopDecomposition& dec, const FiniteOptions& opt) {
    Report R;
    const std::string suite = "finite";
    std::string inst = "s=" + std::to_string(dec.size()) + " d=" + std::to_string(dec.dim());
    using O = Op<Rational>;
    int d = dec.dim(), s = dec.size();
    O I = O::identity(d), Q = O::Q(d);
    LoopUnit a = dec.product();
    O Ua = O::laurent(a.forward), Uai = O::laurent(a.inverse);
    O B = bott_involution(a);

    std::vector<O> Qh, Qs;
    involution_tower(dec, Qh, Qs);
    O BF = b_f(dec);
    long Ms = dec.cls.M(s), Ns = dec.cls.N(s);
    R.add(suite, "B_F is an involution", inst, BF * BF == I);
    R.add(suite, "B_F is an (M_s,N_s)-perturbation of Q", inst, box_perturbation_of(BF, Q, Ms, Ns),
          "box " + fmt_box(Ms, Ns));
    bool invs = true;
    for (int k = 0; k < s; ++k) invs = invs && Qh[k] * Qh[k] == I && Qs[k] * Qs[k] == I;
    R.add(suite, "Qhat_k and Q_k are involutions", inst, invs);

    std::vector<O> Qt = q_tilde(dec);
    R.add(suite, "Qtilde_0 = B(a) and Qtilde_s = B_F", inst, Qt.front() == B && Qt.back() == BF);

    // closed-form stripe inverse against the involution itself
    bool closed = true;
    Entry<Rational> m1 = entry_scalar<Rational>(d, Rational(-1));
    for (int k = 1; k <= s; ++k) {
        StripeKind kind = kind_of(dec.cls.windows[k - 1]);
        StripePerturbation<Rational> sp = as_stripe(Qh[k - 1], m1, kind, dec.cls.M(k), dec.cls.N(k));
        closed = closed && stripe_inverse(sp) == Qh[k - 1];
        for (const Rational& t : {Rational(1, 2), Rational(-1, 3), Rational(5, 2)}) {
            O path = pert_path(sp, t);
            closed = closed && path * path == I;
        }
    }
    R.add(suite, "closed-form stripe inverse and involutive paths on Qhat_k", inst + " t in {1/2,-1/3,5/2}", closed);

    for (const Rational& h : opt.hs) {
        std::string hi = inst + " h=" + to_string(h);
        UnitOp<Rational> u = u_f_linear(dec, h);
        R.add(suite, "linear form inverse is two-sided", hi, u.fwd * u.inv == I && u.inv * u.fwd == I);
        R.add(suite, "linear form differs from U(a) by a finite matrix", hi, O(u.fwd - Ua).is_finite());
        if (h == 0) R.add(suite, "linear form at h=0 equals U(a)", hi, u.fwd == Ua);
        if (h == 1) {
            O prod = I;
            for (int k = s; k >= 1; --k) prod = prod * half(O(I + Qt[k] * Qt[k - 1]));
            R.add(suite, "linear form at h=1 is the product of (1 + Qtilde_k Qtilde_k-1)/2 times U(a)", hi,
                  u.fwd == prod * Ua);
            O M = u.fwd * Uai, Mi = Ua * u.inv;
            R.add(suite, "B_F = M B(a) M^-1 with M = U_F(1) U(a)^-1", hi, BF == M * B * Mi);
        }
    }
    return R;
}

}  // namespace bott
