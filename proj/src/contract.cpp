#include "bott/contract.hpp"

namespace bott {

namespace {

CyclicLoop loop_sum(const CyclicLoop& a, const CyclicLoop& b) {
    int d = a.dim(), e = b.dim();
    std::set<int> ks;
    for (const auto& [k, c] : a.terms().terms()) ks.insert(k);
    for (const auto& [k, c] : b.terms().terms()) ks.insert(k);
    Laurent<QMat> r;
    for (int k : ks) {
        QMat m = QMat::zero(d + e), x = a.coeff(k), y = b.coeff(k);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = x(i, j);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) m(d + i, d + j) = y(i, j);
        r.add(k, m);
    }
    return CyclicLoop(d + e, r);
}

// Operator on Z placed on N of copy 0 and the negative half of copy 1.
template <class K>
Op2<K> spread(const Op<K>& U) {
    int d = U.d;
    Op2<K> r;
    r.b[0][0] = Op<K>::quadrant(d, Sym<K>(Op<K>::one_entry(d)), U.pos);
    r.b[1][1] = Op<K>::quadrant(d, U.neg, Sym<K>(Op<K>::one_entry(d)));
    r.b[0][1] = r.b[1][0] = Op<K>(d);
    for (const auto& [ij, e] : U.fin) {
        auto [i, j] = ij;
        if (i >= 0 && j >= 0) fin_add(r.b[0][0].fin, ij, e);
        else if (i < 0 && j < 0) fin_add(r.b[1][1].fin, ij, e);
        else if (i >= 0) fin_add(r.b[0][1].fin, ij, e);
        else fin_add(r.b[1][0].fin, ij, e);
    }
    return r;
}

// A on N, identity on the negative half.
template <class K>
Op<K> extend_N(const Op<K>& A) {
    return A + Op<K>::quadrant(A.d, Sym<K>(Op<K>::one_entry(A.d)), Sym<K>());
}

// R F R^{-1} for finite F, R rotating the negative half of copy 0 against N of copy 1.
template <class K>
Op2<K> rotate_blocks(const Op2<K>& F, const Param<K>& p) {
    using Pt = std::pair<int, long>;
    auto spread_idx = [&](Pt x, int side) {
        std::vector<std::pair<Pt, K>> out;
        auto [c, i] = x;
        if (c == 0 && i < 0) {
            out.push_back({x, p.s});
            out.push_back({{1, -1 - i}, side ? K(p.t) : K(-p.t)});
        } else if (c == 1 && i >= 0) {
            out.push_back({{0, -1 - i}, side ? K(-p.t) : K(p.t)});
            out.push_back({x, p.s});
        } else {
            out.push_back({x, K(1)});
        }
        return out;
    };
    int d = F.b[0][0].d;
    Op2<K> r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r.b[a][b] = Op<K>(d);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (!F.b[a][b].is_finite()) throw std::logic_error("rotate_blocks needs a finite operator");
            for (const auto& [ij, e] : F.b[a][b].fin)
                for (const auto& [row, x] : spread_idx({a, ij.first}, 1)) {
                    if (detail::iz(x)) continue;
                    // right factor R^{-1} = R^T: column c' spreads like a row of R^T
                    for (const auto& [col, y] : spread_idx({b, ij.second}, 1)) {
                        if (detail::iz(y)) continue;
                        fin_add(r.b[row.first][col.first].fin, {row.second, col.second}, scale(K(x * y), e));
                    }
                }
        }
    return r;
}

}  // namespace

ToeplitzUnit toeplitz_lift(const LoopUnit& a) {
    int d = a.dim();
    using O = Op<Rational>;
    O T = O::toeplitz(d, lift_loop<Rational>(a.forward)), S = O::toeplitz(d, lift_loop<Rational>(a.inverse));
    O one = O::identity_N(d);
    O TS = T * S, ST = S * T;
    O big = T + T - TS * T;
    ToeplitzUnit r;
    r.fwd = op_blocks(big, O(TS - one), O(one - ST), S);
    r.inv = op_blocks(S, O(one - ST), O(TS - one), big);
    r.symbol.forward = loop_sum(a.forward, a.inverse);
    r.symbol.inverse = loop_sum(a.inverse, a.forward);
    r.symbol.provenance = a.provenance;
    r.symbol.provenance.push_back("toeplitz lift");
    return r;
}

ToeplitzUnit toeplitz_corner(const QMat& u) {
    int d = u.dim();
    ToeplitzUnit r;
    r.fwd = Op<Rational>::corner_N(d, Entry<Rational>(u));
    r.inv = Op<Rational>::corner_N(d, Entry<Rational>(u.inverse()));
    r.symbol.forward = r.symbol.inverse = CyclicLoop::one(d);
    r.symbol.provenance = {"corner"};
    return r;
}

SectionResult symbol_section(const LoopUnit& a) {
    using O = Op<Rational>;
    int d = a.dim();
    O k = O::laurent(a.forward), ki = O::laurent(a.inverse);
    O one = O::identity(d), Q = O::Q(d);
    O Ep = half(O(one + Q)), Em = half(O(one - Q));
    Laurent<O> c;
    c.add(-1, k * Em * ki * Ep);
    c.add(0, k * Em * ki * Em + k * Ep * ki * Ep);
    c.add(1, k * Ep * ki * Em);
    Laurent<O> lam_n(ki), lam_p(one);
    GOp<O> lam = GOp<O>::quadrant(lam_n, lam_p);

    SectionResult r;
    r.inflated = l_inflate(k);
    r.mixer = lam;
    r.laurent = GOp<O>::laurent(c);
    r.product = r.inflated * r.mixer * r.laurent;
    Laurent<O> ea(O(one - O::unit_at(d, 0, 0, O::one_entry(d))));
    for (const auto& [n, an] : a.forward.terms().terms()) ea.add(n, O::unit_at(d, 0, 0, Entry<Rational>(an)));
    r.want_symbol = ea * c;
    long m = 0;
    for (const auto& [ij, e] : r.product.fin) m = std::min({m, ij.first, ij.second});
    r.split = m;
    r.block_diagonal = r.product.neg == Laurent<O>(one);
    return r;
}

template <class K>
StepB<K> contract_step_b(const LoopUnit& a, const Param<K>& p) {
    ToeplitzUnit A = toeplitz_lift(a);
    const LoopUnit& ah = A.symbol;
    int D = ah.dim();
    using O = Op<K>;
    O one = O::identity(D), Q = O::Q(D);
    O Ua = O::laurent(ah.forward), Uai = O::laurent(ah.inverse);
    O Af = extend_N(lift_op<K>(A.fwd)), Ai = extend_N(lift_op<K>(A.inv));

    Op2<K> X = Op2<K>::diag(one, Ua) * spread(Uai) * Op2<K>::diag(Af, Ai);
    Op2<K> Xi = Op2<K>::diag(Ai, Af) * spread(Ua) * Op2<K>::diag(one, Uai);
    Op2<K> I2 = Op2<K>::identity(D);
    StepB<K> r;
    r.S = I2 + rotate_blocks(Op2<K>(X - I2), p);
    r.Sinv = I2 + rotate_blocks(Op2<K>(Xi - I2), p);

    Op2<K> mQ = Op2<K>::diag(one, O(-Q));
    Op2<K> Pp = half(Op2<K>(I2 + mQ)), Pm = half(Op2<K>(I2 - mQ));
    Laurent<Op2<K>> lam(Pp), lami(Pp);
    lam.add(1, Pm);
    lami.add(-1, Pm);
    r.symbol = lam * Laurent<Op2<K>>(r.S) * lami * Laurent<Op2<K>>(r.Sinv);

    auto W = [](const Op2<K>& x) { return GOp<Op2<K>>::quadrant(Laurent<Op2<K>>(), Laurent<Op2<K>>(x)); };
    r.value = l_hat(mQ, r.S, I2) * W(r.Sinv);
    r.inverse = W(r.S) * l_hat(mQ, r.Sinv, I2);
    return r;
}

template <class K>
Laurent<Op2<K>> step_b_symbol_start(const LoopUnit& a) {
    LoopUnit ah = toeplitz_lift(a).symbol;
    int D = ah.dim();
    using O = Op<K>;
    O one = O::identity(D), Q = O::Q(D), zero(D);
    O Ua = O::laurent(ah.forward), Uai = O::laurent(ah.inverse);
    O Ep = half(O(one + Q)), Em = half(O(one - Q));
    Laurent<Op2<K>> r;
    r.add(0, Op2<K>::diag(one, O(Ep * Ua * Ep * Uai + Em * Ua * Em * Uai)));
    r.add(1, Op2<K>::diag(zero, O(Ep * Ua * Em * Uai)));
    r.add(-1, Op2<K>::diag(zero, O(Em * Ua * Ep * Uai)));
    return r;
}

template <class K>
StepC<K> contract_step_c(const FinMap<Rational>& F, const FinMap<Rational>& G, int d, const Param<K>& p) {
    using O = Op<K>;
    auto rotated = [&](const FinMap<Rational>& H) {
        O h(d);
        for (const auto& [ij, e] : H) fin_add(h.fin, ij, lift_entry<K>(e));
        K ss = p.s * p.s, st = -(p.s * p.t), tt = p.t * p.t;
        auto sc = [&](const K& c) { return h.scaled(entry_scalar<K>(d, c)); };
        BlockView<K> bv{sc(ss), sc(st), sc(st), sc(tt)};
        return O(O::identity(d) + assemble(bv));
    };
    O one = O::identity(d), Q = O::Q(d);
    StepC<K> r;
    r.k = rotated(F);
    r.kinv = rotated(G);
    auto W = [](const O& x) { return GOp<O>::quadrant(Laurent<O>(), Laurent<O>(x)); };
    r.value = W(r.k) * l_hat(Q, r.kinv, one);
    r.inverse = l_hat(Q, r.k, one) * W(r.kinv);
    return r;
}

template StepB<Rational> contract_step_b(const LoopUnit&, const Param<Rational>&);
template StepB<CircleScalar> contract_step_b(const LoopUnit&, const Param<CircleScalar>&);
template Laurent<Op2<Rational>> step_b_symbol_start<Rational>(const LoopUnit&);
template Laurent<Op2<CircleScalar>> step_b_symbol_start<CircleScalar>(const LoopUnit&);
template StepC<Rational> contract_step_c(const FinMap<Rational>&, const FinMap<Rational>&, int, const Param<Rational>&);
template StepC<CircleScalar> contract_step_c(const FinMap<Rational>&, const FinMap<Rational>&, int,
                                             const Param<CircleScalar>&);

}  // namespace bott
