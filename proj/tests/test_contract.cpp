#include <doctest.h>

#include "bott/contract.hpp"

using namespace bott;

namespace {

using OpQ = Op<Rational>;
using OpC = Op<CircleScalar>;
using EQ = Entry<Rational>;

const CirclePoint P35 = CirclePoint::at(Rational(3, 5), Rational(4, 5));
const CirclePoint T0 = CirclePoint::at(0, 1);
const CirclePoint T1 = CirclePoint::at(1, 0);
const CirclePoint TM = CirclePoint::at(-1, 0);

OpQ random_N(Sampler& S, int d) {
    OpQ A(d);
    for (int k = -2; k <= 2; ++k)
        if (S.integer(0, 2)) A.pos.add(k, EQ(S.matrix(d)));
    int n = static_cast<int>(S.integer(0, 4));
    for (int k = 0; k < n; ++k) fin_add(A.fin, {S.integer(0, 3), S.integer(0, 3)}, EQ(S.matrix(d)));
    return A;
}

template <class K>
Op<K> shifted_in(const Op<K>& A) {
    int d = A.d;
    Op<K> Wz = Op<K>::toeplitz(d, Sym<K>::monomial(1, Op<K>::one_entry(d)));
    Op<K> Wzi = Op<K>::toeplitz(d, Sym<K>::monomial(-1, Op<K>::one_entry(d)));
    return Wz * A * Wzi;
}

// sigma(+-v) e00
template <class K>
Op<K> sigma_corner(const Op<K>& A, int sign) {
    Entry<K> e;
    for (const auto& [n, c] : A.pos.terms()) {
        Entry<K> x = c.shifted(n);
        e = e + (sign < 0 && (n % 2) ? Entry<K>(-x) : x);
    }
    return Op<K>::unit_at(A.d, 0, 0, e);
}

}  // namespace

TEST_CASE("toeplitz lift is a unit with doubled symbol") {
    Sampler S(41);
    for (int rep = 0; rep < 10; ++rep) {
        LoopUnit a = S.unit(1 + rep % 2, 3);
        ToeplitzUnit A = toeplitz_lift(a);
        OpQ I = OpQ::identity_N(2 * a.dim());
        CHECK(A.fwd * A.inv == I);
        CHECK(A.inv * A.fwd == I);
        CHECK(A.fwd.pos == lift_loop<Rational>(A.symbol.forward));
        CHECK(A.inv.pos == lift_loop<Rational>(A.symbol.inverse));
    }
    QMat u = S.invertible(2);
    ToeplitzUnit E = toeplitz_corner(u);
    CHECK(E.fwd * E.inv == OpQ::identity_N(2));
}

TEST_CASE("toeplitz stabilization homotopy") {
    Sampler S(42);
    for (int rep = 0; rep < 12; ++rep) {
        int d = 1 + rep % 2;
        OpQ A = random_N(S, d), B = random_N(S, d);
        OpC Ac = lift_op<CircleScalar>(A), Bc = lift_op<CircleScalar>(B);
        CHECK(toeplitz_homotopy(A, param(T0)) == A);
        OpQ end = toeplitz_homotopy(A, param(T1));
        CHECK(end == sigma_corner(lift_op<Rational>(A), 1) + shifted_in(A));
        CHECK(toeplitz_homotopy(A, param(TM)) == sigma_corner(A, -1) + shifted_in(A));
        for (const auto& p : {P35, T0, T1, TM}) {
            OpQ t = toeplitz_homotopy(A, param(p));
            CHECK(t.pos == A.pos);
            CHECK(t.on_N());
            CHECK(toeplitz_homotopy(OpQ(A * B), param(p)) == t * toeplitz_homotopy(B, param(p)));
        }
        auto ps = param_symbolic();
        CHECK(toeplitz_homotopy(OpC(Ac * Bc), ps) == toeplitz_homotopy(Ac, ps) * toeplitz_homotopy(Bc, ps));
        CHECK(op_at(toeplitz_homotopy(Ac, ps), P35) == toeplitz_homotopy(A, param(P35)));
    }
}

TEST_CASE("symbol killer endpoints") {
    Sampler S(43);
    for (int rep = 0; rep < 10; ++rep) {
        LoopUnit a = S.unit(1 + rep % 2, 3);
        ToeplitzUnit A = rep % 3 == 2 ? toeplitz_corner(S.invertible(2)) : toeplitz_lift(a);
        int d = A.fwd.d;
        CHECK(symbol_killer<Rational>(A, param(T0)) == OpQ::identity_N(d));
        CHECK(symbol_killer<Rational>(A, param(T1)) == symbol_killer_end<Rational>(A, 1));
        CHECK(symbol_killer<Rational>(A, param(TM)) == symbol_killer_end<Rational>(A, -1));
        OpQ z = symbol_killer<Rational>(A, param(P35));
        CHECK(z.pos == Sym<Rational>(OpQ::one_entry(d)));
        CHECK(z.subst_v(Rational(1)) == OpQ::identity_N(d));
    }
}

TEST_CASE("L(Q,k) tridiagonal form") {
    Sampler S(44);
    for (int rep = 0; rep < 10; ++rep) {
        int d = 2 + rep % 2;
        QMat Q = S.involution(d), one = QMat::identity(d);
        QMat k1 = S.matrix(d), k2 = S.matrix(d);
        GOp<QMat> L1 = l_op(Q, k1, one);
        auto lam = [&](int sgn) {
            Laurent<QMat> x;
            x.add(0, half(QMat(one + Q)));
            x.add(sgn, half(QMat(one - Q)));
            return GOp<QMat>::quadrant(Laurent<QMat>(), x);
        };
        GOp<QMat> W = GOp<QMat>::quadrant(Laurent<QMat>(), Laurent<QMat>(k1));
        CHECK(L1 == lam(1) * W * lam(-1));
        CHECK(l_op(Q, QMat(k1 * k2), one) == L1 * l_op(Q, k2, one));
        QMat u = S.invertible(d);
        CHECK(l_hat(Q, u, one) * l_hat(Q, u.inverse(), one) == GOp<QMat>::identity_N(one));
        QSplit<QMat> sp = qsplit(Q, k1, one);
        CHECK(sp.plus == sp.pp + sp.mm);
        CHECK(sp.minus == sp.pm + sp.mp);
        CHECK(sp.plus + sp.minus == k1);
    }
    CHECK_THROWS_AS(l_op(QMat::scalar(2, 2), QMat::identity(2), QMat::identity(2)), NotInvolution);
}

TEST_CASE("inflated L is a homomorphism on Laurent units") {
    Sampler S(45);
    for (int rep = 0; rep < 6; ++rep) {
        LoopUnit a = S.unit(1, 2), b = S.unit(1, 2);
        OpQ ka = OpQ::laurent(a.forward), kb = OpQ::laurent(b.forward);
        CHECK(l_inflate(OpQ(ka * kb)) == l_inflate(ka) * l_inflate(kb));
        CHECK(l_inflate(ka) * l_inflate(OpQ::laurent(a.inverse)) == GOp<OpQ>::identity(OpQ::identity(1)));
    }
}

TEST_CASE("symbol of the section") {
    Sampler S(46);
    for (int rep = 0; rep < 10; ++rep) {
        LoopUnit a = S.unit(1 + rep % 2, 3);
        SectionResult r = symbol_section(a);
        CHECK(r.block_diagonal);
        CHECK(r.split >= -1);
        CHECK(r.product.pos == r.want_symbol);
        long cmp = 0;
        CHECK(window_product_check<OpQ>({&r.inflated, &r.mixer, &r.laurent}, r.product, -12, 12, &cmp));
        CHECK(cmp >= 100);
    }
}

TEST_CASE("contraction step (b) endpoint symbols") {
    Sampler S(47);
    for (int rep = 0; rep < 4; ++rep) {
        LoopUnit a = S.unit(1, 2);
        auto start = step_b_symbol_start<Rational>(a);
        StepB<Rational> b0 = contract_step_b(a, param(T0));
        CHECK(b0.S * b0.Sinv == Op2<Rational>::identity(2));
        CHECK(b0.symbol == start);
        CHECK(b0.value.pos == b0.symbol);
        StepB<Rational> b1 = contract_step_b(a, param(T1));
        CHECK(b1.symbol == Laurent<Op2<Rational>>(Op2<Rational>::identity(2)));
        StepB<Rational> bm = contract_step_b(a, param(P35));
        CHECK(bm.S * bm.Sinv == Op2<Rational>::identity(2));
        CHECK(bm.value * bm.inverse == GOp<Op2<Rational>>::identity_N(Op2<Rational>::identity(2)));
    }
}

TEST_CASE("contraction step (c) endpoints") {
    Sampler S(48);
    for (int rep = 0; rep < 6; ++rep) {
        int d = 1 + rep % 2;
        QMat M = S.invertible(2 * d), Mi = M.inverse();
        FinMap<Rational> F, G;
        for (int bi = 0; bi < 2; ++bi)
            for (int bj = 0; bj < 2; ++bj) {
                QMat x = QMat::zero(d), y = QMat::zero(d);
                for (int u = 0; u < d; ++u)
                    for (int w = 0; w < d; ++w) {
                        x(u, w) = M(bi * d + u, bj * d + w) - (bi == bj && u == w ? 1 : 0);
                        y(u, w) = Mi(bi * d + u, bj * d + w) - (bi == bj && u == w ? 1 : 0);
                    }
                fin_add(F, {bi, bj}, EQ(x));
                fin_add(G, {bi, bj}, EQ(y));
            }
        OpQ one = OpQ::identity(d);
        StepC<Rational> c0 = contract_step_c(F, G, d, param(T0));
        GOp<OpQ> E = GOp<OpQ>::identity_N(one);
        gfin_add(E.fin, {0, 0}, OpQ(c0.k - one));
        CHECK(c0.value == E);
        CHECK(contract_step_c(F, G, d, param(T1)).value == GOp<OpQ>::identity_N(one));
        StepC<Rational> cm = contract_step_c(F, G, d, param(P35));
        CHECK(cm.k * cm.kinv == one);
        CHECK(cm.value * cm.inverse == GOp<OpQ>::identity_N(one));
    }
}
