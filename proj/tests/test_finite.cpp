#include <doctest.h>

#include "bott/finite.hpp"

using namespace bott;

namespace {

using OpQ = Op<Rational>;
using EQ = Entry<Rational>;

std::string failures(const Report& r) {
    std::string s;
    for (const auto& row : r.rows)
        if (!row.pass) s += row.anchor + " [" + row.instance + "] " + row.detail + "\n";
    return s;
}

EQ vq(int d, int k = 1) { return EQ::monomial(k, QMat::identity(d)); }

}  // namespace

TEST_CASE("reduction cuts off the stripe") {
    int d = 1;
    OpQ A = OpQ::lambda_Q(d, vq(d));
    fin_add(A.fin, {0, 5}, EQ(QMat::scalar(1, 2)));
    fin_add(A.fin, {1, -1}, EQ(QMat::scalar(1, 3)));
    fin_add(A.fin, {0, 1}, EQ(QMat::scalar(1, 7)));
    auto sp = as_stripe(A, vq(d), StripeKind::L, -1, 2);
    auto red = reduce(sp);
    CHECK(red.kind == StripeKind::Both);
    CHECK(red.data.size() == 2);
    CHECK(red.data.count({0, 5}) == 0);
    CHECK(reduce(red).data == red.data);
    CHECK_THROWS_AS(as_stripe(A, vq(d), StripeKind::R, -1, 2), StripeClassViolation);
    CHECK_THROWS_AS(as_stripe(A, vq(d, -1), StripeKind::L, -1, 2), StripeClassViolation);
    CHECK_THROWS_AS(stripe_inverse(sp), WrongKind);
}

TEST_CASE("closed-form stripe inverse") {
    Sampler S(51);
    for (int rep = 0; rep < 20; ++rep) {
        int d = 1 + rep % 2;
        StripeKind kind = rep % 2 ? StripeKind::R : StripeKind::L;
        Rational sv = rep % 3 ? Rational(-1) : Rational(2);
        OpQ A = OpQ::lambda_Q(d, EQ(QMat::scalar(d, sv)));
        long m = -S.integer(0, 2), n = S.integer(0, 2);
        for (int k = 0; k < 5; ++k) {
            long i = S.integer(m, n), j = S.integer(m - 3, n + 3);
            if (kind == StripeKind::R) std::swap(i, j);
            fin_add(A.fin, {i, j}, EQ(S.matrix(d)));
        }
        auto sp = as_stripe(A, EQ(QMat::scalar(d, sv)), kind, m, n);
        OpQ Ai;
        try {
            Ai = stripe_inverse(sp);
        } catch (const SingularMiddleBlock&) {
            continue;
        }
        OpQ I = OpQ::identity(d);
        CHECK(A * Ai == I);
        CHECK(Ai * A == I);
        auto spi = as_stripe(Ai, EQ(QMat::scalar(d, Rational(1) / sv)), kind, m, n);
        CHECK(reduce(sp).op() * reduce(spi).op() == I);
        Rational t(1, 3);
        CHECK(pert_path(sp, t) * pert_path_inverse(sp, Ai, t) == I);
    }
    OpQ Z = OpQ::lambda_Q(1, EQ(QMat::scalar(1, -1)));
    fin_add(Z.fin, {0, 0}, EQ(QMat::scalar(1, -1)));
    CHECK_THROWS_AS(stripe_inverse(as_stripe(Z, EQ(QMat::scalar(1, -1)), StripeKind::L, 0, 0)), SingularMiddleBlock);
}

TEST_CASE("towers for linear and trivial factors") {
    Sampler S(52);
    QMat Qt = S.involution(2);
    LoopUnit lin{mixer(Qt, 1), mixer(Qt, -1), {}};
    LoopDecomposition dec = make_decomposition({lin});
    for (const auto& p : pythagorean_grid(3)) {
        auto T = tower(dec, param(p));
        auto sp = as_stripe(T.Hhat[0], vq(2), StripeKind::L, T.M[1], T.N[1]);
        CHECK(reduce(sp).data == sp.data);
    }
    auto T0 = tower(dec, param(CirclePoint::at(0, 1)));
    OpQ B = bott_involution(lin);
    CHECK(b_f(dec) == B);
    CHECK(T0.H[0] == lambda_scalar(vq(2), B));

    LoopDecomposition triv = make_decomposition({unit_builder(1, {}), unit_builder(1, {})});
    auto Tt = tower(triv, param(CirclePoint::at(Rational(3, 5), Rational(4, 5))));
    for (int k = 0; k < 2; ++k) {
        CHECK(Tt.Hhat[k] == OpQ::lambda_Q(1, vq(1)));
        CHECK(Tt.H[k] == OpQ::lambda_Q(1, vq(1)));
    }
    CHECK(b_f(triv) == OpQ::Q(1));
    for (const Rational& h : {Rational(0), Rational(1, 2), Rational(1)})
        CHECK(u_f(triv, param(CirclePoint::at(Rational(3, 5), Rational(4, 5))), h).fwd == OpQ::identity(1));
}

TEST_CASE("band growth under conjugation") {
    Sampler S(53);
    for (int rep = 0; rep < 20; ++rep) {
        int d = 1 + rep % 2;
        LoopUnit a = S.unit(d, 2);
        ClassWindow w = default_window(a);
        long m1 = -S.integer(0, 2), n1 = S.integer(0, 2);
        OpQ A = OpQ::lambda_Q(d, vq(d));
        for (int k = 0; k < 4; ++k) fin_add(A.fin, {S.integer(m1, n1), S.integer(m1, n1)}, EQ::monomial(int(S.integer(-1, 1)), S.matrix(d)));
        auto p = param(pythagorean_grid(4)[rep % 5]);
        OpQ R = linearize_u(a.forward, p) * A * linearize_u(a.inverse, p).subst_v(Rational(1));
        CHECK_NOTHROW(as_stripe(R, vq(d), StripeKind::L, w.m + m1, w.n + n1));
        ClassWindow wr{std::min(0, -a.inverse.max_exp()), std::max(0, -a.inverse.min_exp()), 'R'};
        CHECK_NOTHROW(as_stripe(R, vq(d), StripeKind::R, wr.m + m1, wr.n + n1));
    }
}

TEST_CASE("finite linearization checks") {
    Sampler S(7);
    std::vector<CirclePoint> pts = pythagorean_grid(3);
    pts.push_back(CirclePoint::at(Rational(-3, 5), Rational(4, 5)));
    int cut = 0, plain = 0;
    for (int rep = 0; rep < 200 && (cut < 4 || plain < 2); ++rep) {
        LoopDecomposition dec = S.decomposition(1 + rep % 2, 1 + rep % 3, 2);
        auto T = tower(dec, param(CirclePoint::at(Rational(3, 5), Rational(4, 5))));
        bool reduces = false;
        for (std::size_t k = 0; k < T.Hhat.size(); ++k) reduces = reduces || T.Hhat[k] != T.H[k];
        if (reduces ? cut >= 4 : plain >= 2) continue;
        (reduces ? cut : plain)++;
        if (rep % 2) {
            // R windows from the inverse support on every other factor
            for (int j = 0; j < dec.size(); j += 2) {
                const auto& f = dec.factors[j];
                dec.cls.windows[j] = ClassWindow{std::min(0, -f.inverse.max_exp()), std::max(0, -f.inverse.min_exp()), 'R'};
            }
        }
        Report st = finite_static_checks(dec);
        CHECK_MESSAGE(st.all_pass(), failures(st));
        for (const auto& p : pts) {
            Report r = finite_checks(dec, p);
            CHECK_MESSAGE(r.all_pass(), failures(r));
        }
    }
    CHECK(cut == 4);
}

TEST_CASE("finite linearization with symbolic angle") {
    Sampler S(55);
    LoopDecomposition dec = S.decomposition(1, 2, 1);
    Report r = finite_checks(dec, CirclePoint::symbol(), FiniteOptions{{Rational(0), Rational(1)}});
    CHECK_MESSAGE(r.all_pass(), failures(r));
    CHECK(r.rows.size() >= 6);
}
