#include <doctest.h>

#include "bott/op.hpp"
#include "bott/oracle.hpp"
#include "bott/relabel.hpp"
#include "bott/toeplitz.hpp"

using namespace bott;

namespace {

using OpQ = Op<Rational>;
using SymQ = Sym<Rational>;
using EQ = Entry<Rational>;

EQ sc(const Rational& c, int d = 1) { return entry_scalar<Rational>(d, c); }
SymQ zpow(int k, int d = 1) { return SymQ::monomial(k, OpQ::one_entry(d)); }

SymQ random_sym(Sampler& S, int d, int lo, int hi) {
    SymQ a;
    for (int k = lo; k <= hi; ++k)
        if (S.integer(0, 2)) a.add(k, EQ(S.matrix(d)));
    return a;
}

OpQ random_op(Sampler& S, int d) {
    OpQ A = OpQ::quadrant(d, random_sym(S, d, -2, 2), random_sym(S, d, -2, 2));
    int n = static_cast<int>(S.integer(0, 5));
    for (int k = 0; k < n; ++k) fin_add(A.fin, {S.integer(-4, 3), S.integer(-4, 3)}, EQ(S.matrix(d)));
    return A;
}

ToeplitzElement<Rational> random_toeplitz(Sampler& S, int d) {
    ToeplitzElement<Rational> T{d, random_sym(S, d, -2, 2), {}};
    int n = static_cast<int>(S.integer(0, 4));
    for (int k = 0; k < n; ++k) fin_add(T.finite, {S.integer(0, 4), S.integer(0, 4)}, EQ(S.matrix(d)));
    return T;
}

}  // namespace

TEST_CASE("shift times inverse shift") {
    OpQ U = OpQ::laurent(1, zpow(1)), Ui = OpQ::laurent(1, zpow(-1));
    CHECK(U * Ui == OpQ::identity(1));
    CHECK(Ui * U == OpQ::identity(1));
    CHECK(U.at(1, 0) == sc(1));
    CHECK(U.at(0, -1) == sc(1));
    CHECK(U.at(-1, 0) == EQ());
}

TEST_CASE("matrix unit is idempotent") {
    OpQ e = OpQ::unit_at(1, 0, 0, sc(1));
    CHECK(e * e == e);
}

TEST_CASE("shift conjugation of Q") {
    OpQ U = OpQ::laurent(1, zpow(1)), Ui = OpQ::laurent(1, zpow(-1));
    OpQ Q = OpQ::Q(1);
    OpQ want = Q - OpQ::unit_at(1, 0, 0, sc(2));
    OpQ got = U * Q * Ui;
    CHECK(got == want);
    CHECK(Q.shift_conj() == want);
    for (long m = -6; m < 6; ++m) CHECK(got.at(m, m) == sc(m - 1 >= 0 ? 1 : -1));

    auto W = dense_mul(dense_mul(DenseWindow<Rational>::truncate(U, -12, 12), DenseWindow<Rational>::truncate(Q, -12, 12)),
                       DenseWindow<Rational>::truncate(Ui, -12, 12));
    CHECK(W.safe_lo() <= -8);
    CHECK(W.safe_hi() >= 8);
    for (long i = -8; i < 8; ++i)
        for (long j = -8; j < 8; ++j) CHECK(W.at(i, j) == want.at(i, j));
}

TEST_CASE("inverse examples") {
    OpQ A = OpQ::identity(1) + OpQ::unit_at(1, 0, 0, sc(1));
    OpQ Ai = A.inverse(zpow(0), zpow(0));
    CHECK(Ai == OpQ::identity(1) - OpQ::unit_at(1, 0, 0, sc(Rational(1, 2))));

    OpQ U = OpQ::laurent(1, zpow(1));
    CHECK(U.inverse(zpow(-1), zpow(-1)) == OpQ::laurent(1, zpow(-1)));

    // Lambda(v, Q) is diagonal; invert it over the v-ring symbol by symbol.
    EQ v = entry_v<Rational>(1, 1), vi = entry_v<Rational>(1, -1);
    OpQ L = OpQ::lambda_Q(1, v);
    OpQ Li = OpQ::lambda_Q(1, vi);
    CHECK(L.inverse(SymQ(vi), zpow(0)) == Li);
    CHECK(L * Li == OpQ::identity(1));

    CHECK_THROWS_AS(U.inverse(zpow(1), zpow(-1)), HintMismatch);
    OpQ S = OpQ::identity(1) - OpQ::unit_at(1, 2, 2, sc(1));
    CHECK_THROWS_AS(S.inverse(zpow(0), zpow(0)), SingularFiniteBlock);
}

TEST_CASE("inverse of random laurent units with finite perturbation") {
    Sampler S(7);
    for (int trial = 0; trial < 8; ++trial) {
        LoopUnit u = S.unit(2, 3);
        OpQ A = OpQ::laurent(u.forward) * OpQ::corner(2, EQ(S.invertible(2)));
        OpQ Ai = A.inverse(lift_loop<Rational>(u.inverse), lift_loop<Rational>(u.inverse));
        CHECK(A * Ai == OpQ::identity(2));
        CHECK(Ai * A == OpQ::identity(2));
    }
}

TEST_CASE("toeplitz products") {
    using T = ToeplitzElement<Rational>;
    T Wz{1, zpow(1), {}}, Wzi{1, zpow(-1), {}};
    T a = toeplitz_mul(Wz, Wzi);
    CHECK(a.symbol == zpow(0));
    REQUIRE(a.finite.size() == 1);
    CHECK(a.finite.at({0, 0}) == sc(-1));
    T b = toeplitz_mul(Wzi, Wz);
    CHECK(b.symbol == zpow(0));
    CHECK(b.finite.empty());

    Sampler S(11);
    for (int trial = 0; trial < 20; ++trial) {
        T x = random_toeplitz(S, 2), y = random_toeplitz(S, 2);
        T xy = toeplitz_mul(x, y);
        CHECK(xy.symbol == x.symbol * y.symbol);
        CHECK(xy.as_op() == x.as_op() * y.as_op());
    }
}

TEST_CASE("block views") {
    OpQ U = OpQ::laurent(1, zpow(1));
    auto bv = block_view(U);
    CHECK(bv.mp == OpQ(1));
    CHECK(bv.pm.is_finite());
    CHECK(bv.pp == OpQ::toeplitz(1, zpow(1)));
    CHECK(bv.mm == OpQ::toeplitz(1, zpow(-1)));

    auto one = block_view(OpQ::identity(1));
    CHECK(one.mm == OpQ::identity_N(1));
    CHECK(one.pp == OpQ::identity_N(1));
    CHECK(one.mp == OpQ(1));
    CHECK(one.pm == OpQ(1));

    auto q = block_view(OpQ::Q(1));
    CHECK(q.mm == -OpQ::identity_N(1));
    CHECK(q.pp == OpQ::identity_N(1));
    CHECK(q.mp == OpQ(1));
    CHECK(q.pm == OpQ(1));

    Sampler S(3);
    for (int trial = 0; trial < 20; ++trial) {
        SymQ a = random_sym(S, 2, -3, 3);
        auto b = block_view(OpQ::laurent(2, a));
        CHECK(b.pp == OpQ::toeplitz(2, a));
        CHECK(b.mm == OpQ::toeplitz(2, a.reversed()));
        CHECK(b.mp == hankel_Y(2, a));
        CHECK(b.pm == hankel_Y(2, a.reversed()));
        OpQ A = random_op(S, 2);
        CHECK(assemble(block_view(A)) == A);
        auto bA = block_view(A);
        auto bb = block_view(assemble(bA));
        CHECK(bb.mm == bA.mm);
        CHECK(bb.mp == bA.mp);
        CHECK(bb.pm == bA.pm);
        CHECK(bb.pp == bA.pp);
    }
}

TEST_CASE("lambda mixing") {
    OpQ Lz = lambda_scalar(EQ(zpow(0).coeff(0)), OpQ::Q(1));
    CHECK(Lz == OpQ::identity(1));  // Lambda(1, Q)
    OpQ U = OpQ::laurent(1, zpow(1));
    OpQ L = lambda_op(U, OpQ::Q(1));
    for (long i = -5; i < 5; ++i)
        for (long j = -5; j < 5; ++j) CHECK(L.at(i, j) == (j < 0 ? U.at(i, j) : (i == j ? sc(1) : EQ())));
    Sampler S(5);
    OpQ X = random_op(S, 1);
    CHECK(lambda_op(X, OpQ::identity(1)) == OpQ::identity(1));
    CHECK(lambda_op(OpQ::identity(1), X) == OpQ::identity(1));
    EQ v = entry_v<Rational>(1);
    CHECK(lambda_scalar(v, OpQ::Q(1)) == OpQ::lambda_Q(1, v));
}

TEST_CASE("corner embedding") {
    CHECK(OpQ::corner(2, OpQ::one_entry(2)) == OpQ::identity(2));
    CHECK(OpQ::corner_N(2, OpQ::one_entry(2)) == OpQ::identity_N(2));
    Sampler S(9);
    for (int trial = 0; trial < 10; ++trial) {
        QMat a = S.invertible(2), b = S.invertible(2);
        CHECK(OpQ::corner(2, EQ(a * b)) == OpQ::corner(2, EQ(a)) * OpQ::corner(2, EQ(b)));
        CHECK(OpQ::corner_N(2, EQ(a * b)) == OpQ::corner_N(2, EQ(a)) * OpQ::corner_N(2, EQ(b)));
    }
    OpQ E = OpQ::corner(1, sc(3));
    CHECK(E.at(0, 0) == sc(3));
    CHECK(E.at(1, 1) == sc(1));
    CHECK(E.at(-1, -1) == sc(1));
}

TEST_CASE("relabeling") {
    std::map<std::pair<NN, NN>, int> A{{{{0, 0}, {0, 0}}, 1}, {{{2, 3}, {1, 0}}, 5}, {{{4, 1}, {0, 2}}, 7}};
    CHECK(relabel(A, identity_nn()) == A);
    auto c = cantor_pairing();
    CHECK(relabel(relabel(A, c), invert(c)) == A);
    for (long k = 0; k < 200; ++k) CHECK(c.fwd(c.bwd(k)) == k);
    auto z = zigzag();
    for (long n = -50; n < 50; ++n) CHECK(z.bwd(z.fwd(n)) == n);
    auto il = interleave();
    for (long k = -50; k < 50; ++k) CHECK(il.fwd(il.bwd(k)) == k);

    std::map<std::pair<NN, NN>, int> e{{{{0, 0}, {0, 0}}, 1}};
    auto se = relabel(e, shift_outer());
    CHECK(se == std::map<std::pair<NN, NN>, int>{{{{1, 0}, {1, 0}}, 1}});

    // composition law
    std::map<std::pair<NN, NN>, int> B{{{{0, 1}, {2, 0}}, 3}, {{{1, 1}, {0, 0}}, 4}};
    auto both = compose(c, shift_outer());
    CHECK(relabel(B, both) == relabel(relabel(B, shift_outer()), c));

    Bijection<long, long> collapse{[](const long&) { return 0L; }, nullptr, "collapse"};
    std::map<std::pair<long, long>, int> D{{{0, 1}, 1}};
    CHECK_THROWS_AS(relabel(D, collapse), NotBijective);
}

TEST_CASE("adjoints") {
    OpQ Q = OpQ::Q(1);
    CHECK(Q.adjoint() == Q);
    Sampler S(13);
    for (int trial = 0; trial < 20; ++trial) {
        SymQ a = random_sym(S, 2, -2, 2);
        CHECK(OpQ::laurent(2, a).adjoint() == OpQ::laurent(2, adjoint(a)));
        OpQ A = random_op(S, 2), B = random_op(S, 2);
        CHECK((A * B).adjoint() == B.adjoint() * A.adjoint());
        for (long i = -4; i < 4; ++i)
            for (long j = -4; j < 4; ++j) CHECK(A.adjoint().at(i, j) == adjoint(A.at(j, i)));
    }
    QMat c = S.matrix(2);
    CHECK(OpQ::unit_at(2, 3, -1, EQ(c)).adjoint() == OpQ::unit_at(2, -1, 3, EQ(c.transpose())));
}

TEST_CASE("unitarity transport") {
    Sampler S(17);
    for (int trial = 0; trial < 6; ++trial) {
        LoopUnit a = S.unitary_unit(2, 2), b = S.unitary_unit(2, 2);
        OpQ A = OpQ::laurent(a.forward) * OpQ::corner(2, EQ(S.orthogonal(2)));
        OpQ B = OpQ::Q(2) * OpQ::laurent(b.forward);
        OpQ Ai = A.inverse(lift_loop<Rational>(a.inverse), lift_loop<Rational>(a.inverse));
        SymQ bi = lift_loop<Rational>(b.inverse);
        OpQ Bi = B.inverse(-bi, bi);
        CHECK(A.adjoint() == Ai);
        CHECK(B.adjoint() == Bi);
        OpQ AB = A * B;
        CHECK(AB.adjoint() == Bi * Ai);
        CHECK(AB.adjoint() * AB == OpQ::identity(2));
    }
}

TEST_CASE("structured product matches the dense oracle") {
    Sampler S(21);
    for (int trial = 0; trial < 25; ++trial) {
        OpQ A = random_op(S, 2), B = random_op(S, 2);
        OpQ C = A * B;
        for (const auto& [ij, e] : C.fin) CHECK(!e.is_zero());
        auto W = dense_mul(DenseWindow<Rational>::truncate(A, -16, 16), DenseWindow<Rational>::truncate(B, -16, 16));
        CHECK(W.safe_lo() <= -8);
        CHECK(W.safe_hi() >= 8);
        std::string where;
        CHECK_MESSAGE(agrees_on_safe(W, C, &where), where);
    }
}

TEST_CASE("reflection and shift conjugation") {
    Sampler S(23);
    for (int trial = 0; trial < 20; ++trial) {
        OpQ A = random_op(S, 1);
        OpQ R = A.reflect(), T = A.shift_conj();
        for (long i = -7; i < 7; ++i)
            for (long j = -7; j < 7; ++j) {
                CHECK(R.at(i, j) == A.at(-i, -j));
                CHECK(T.at(i, j) == A.at(i - 1, j - 1));
            }
        CHECK(R.reflect() == A);
    }
}
