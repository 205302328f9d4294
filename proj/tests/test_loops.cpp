#include "doctest.h"

#include "bott/loop.hpp"

using namespace bott;

TEST_CASE("loop_mul examples") {
    auto z = CyclicLoop::z(1), zi = CyclicLoop::z(1, -1), one = CyclicLoop::one(1);
    CHECK(z * zi == one);
    CHECK((one + z) * (one - z) == one - z * z);
    Sampler rng(3);
    for (int d = 1; d <= 3; ++d) {
        QMat q = rng.involution(d);
        CHECK(mixer(q, 1) * mixer(q, -1) == CyclicLoop::one(d));
    }
}

TEST_CASE("unit_builder examples") {
    Generator g;
    g.kind = Generator::Mixer;
    g.k = 1;
    g.c = QMat::scalar(1, -1);
    auto u = unit_builder(1, {g});
    CHECK(u.forward == CyclicLoop::z(1));
    CHECK(u.inverse == CyclicLoop::z(1, -1));
    auto id = unit_builder(2, {});
    CHECK(id.forward == CyclicLoop::one(2));

    QMat q1 = QMat::zero(2), q2 = QMat::zero(2);
    q1(0, 0) = 1;
    q1(1, 1) = -1;
    q2(0, 1) = 1;
    q2(1, 0) = 1;
    REQUIRE(q1 * q2 != q2 * q1);
    Generator a{Generator::Mixer, q1, 1, CyclicLoop(2), 0}, b{Generator::Mixer, q2, 1, CyclicLoop(2), 0};
    auto w = unit_builder(2, {a, b});
    CHECK(w.forward.min_exp() == 0);
    CHECK(w.forward.max_exp() == 2);
    CHECK(w.inverse.min_exp() == -2);
    CHECK(w.inverse.max_exp() == 0);
    CHECK(w.forward * w.inverse == CyclicLoop::one(2));

    Generator bad{Generator::Mixer, QMat::scalar(2, 2), 1, CyclicLoop(2), 0};
    CHECK_THROWS_AS(unit_builder(2, {bad}), BadInvolution);
    Generator nil;
    nil.kind = Generator::Unipotent;
    nil.n = CyclicLoop::z(2);
    nil.witness = 3;
    CHECK_THROWS_AS(unit_builder(2, {nil}), NotInvertible);
}

TEST_CASE("loop_eval and adjoint") {
    auto z = CyclicLoop::z(1), one = CyclicLoop::one(1);
    CHECK(loop_eval(one - z + z * z, 1) == QMat::identity(1));
    CHECK(loop_eval(z, -1) == QMat::scalar(1, -1));
    Sampler rng(5);
    QMat q = rng.involution(2);
    CHECK(loop_eval(mixer(q), 1) == QMat::identity(2));
    CHECK(loop_adjoint(z) == CyclicLoop::z(1, -1));
    auto sym = one + z + CyclicLoop::z(1, -1);
    CHECK(loop_adjoint(sym) == sym);
    QMat c = rng.matrix(2);
    CHECK(loop_adjoint(CyclicLoop::monomial(2, c)) == CyclicLoop::monomial(-2, c.transpose()));
}

TEST_CASE("loop properties on random units") {
    Sampler rng(11);
    for (int it = 0; it < 20; ++it) {
        int d = 1 + it % 3;
        auto a = rng.unit(d, 3), b = rng.unit(d, 2), c = rng.unit(d, 2);
        CHECK(a.forward * a.inverse == CyclicLoop::one(d));
        CHECK(a.inverse * a.forward == CyclicLoop::one(d));
        CHECK((a.forward * b.forward) * c.forward == a.forward * (b.forward * c.forward));
        CHECK((a.forward * b.forward).eval(1) == a.forward.eval(1) * b.forward.eval(1));
        CHECK((a.forward * b.forward).adjoint() == b.forward.adjoint() * a.forward.adjoint());
        CHECK(a.forward.adjoint().adjoint() == a.forward);
        CHECK(is_pointed(pointed(a)));
        auto p = pointed(a);
        CHECK(p.forward * p.inverse == CyclicLoop::one(d));
    }
    CHECK(is_pointed(unit_builder(1, {Generator{Generator::Monomial, QMat::identity(1), 1, CyclicLoop(1), 0}})));
    CHECK(!is_pointed(unit_builder(1, {Generator{Generator::Constant, QMat::scalar(1, 2), 0, CyclicLoop(1), 0}})));
}

TEST_CASE("decomposition windows") {
    Sampler rng(13);
    auto dec = rng.decomposition(2, 3);
    CHECK(dec.windows_ok());
    CHECK(dec.cls.M(0) == 0);
    CHECK(dec.cls.N(3) == dec.cls.windows[0].n + dec.cls.windows[1].n + dec.cls.windows[2].n);
    dec.cls.windows[0] = ClassWindow{0, 0, 'L'};
    if (dec.factors[0].forward.max_exp() > 0 || dec.factors[0].forward.min_exp() < 0) CHECK(!dec.windows_ok());
}
