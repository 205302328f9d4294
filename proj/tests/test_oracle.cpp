#include <doctest.h>

#include <vector>

#include "bott/oracle.hpp"

using namespace bott;

namespace {

using OpQ = Op<Rational>;
using SymQ = Sym<Rational>;
using EQ = Entry<Rational>;

EQ sc(const Rational& c) { return entry_scalar<Rational>(1, c); }
SymQ zpow(int k) { return SymQ::monomial(k, OpQ::one_entry(1)); }

OpQ random_op(Sampler& S) {
    auto sym = [&] {
        SymQ a;
        for (int k = -3; k <= 3; ++k)
            if (S.integer(0, 2)) a.add(k, sc(S.small_rational()));
        return a;
    };
    OpQ A = OpQ::quadrant(1, sym(), sym());
    for (int k = 0; k < 4; ++k) fin_add(A.fin, {S.integer(-4, 3), S.integer(-4, 3)}, sc(S.small_rational()));
    return A;
}

}  // namespace

TEST_CASE("truncation examples") {
    auto U = DenseWindow<Rational>::truncate(OpQ::laurent(1, zpow(1)), -2, 2);
    for (long i = -2; i < 2; ++i)
        for (long j = -2; j < 2; ++j) CHECK(U.at(i, j) == (i == j + 1 ? sc(1) : EQ()));
    CHECK(U.budget == 0);
    auto Q = DenseWindow<Rational>::truncate(OpQ::Q(1), -2, 2);
    for (long i = -2; i < 2; ++i) CHECK(Q.at(i, i) == sc(i < 0 ? -1 : 1));
}

TEST_CASE("dense products") {
    Sampler S(4);
    OpQ A = random_op(S);
    auto I = DenseWindow<Rational>::truncate(OpQ::identity(1), -10, 10);
    auto W = DenseWindow<Rational>::truncate(A, -10, 10);
    auto P = dense_mul(I, W);
    for (long i = -10; i < 10; ++i)
        for (long j = -10; j < 10; ++j) CHECK(P.at(i, j) == W.at(i, j));
    auto sh = dense_mul(DenseWindow<Rational>::truncate(OpQ::laurent(1, zpow(1)), -6, 6),
                        DenseWindow<Rational>::truncate(OpQ::laurent(1, zpow(-1)), -6, 6));
    CHECK(agrees_on_safe(sh, OpQ::identity(1)));
    CHECK_THROWS_AS(dense_mul(I, DenseWindow<Rational>::truncate(A, -9, 10)), WindowMismatch);
}

TEST_CASE("enlarging the window keeps the safe region") {
    Sampler S(8);
    for (int trial = 0; trial < 20; ++trial) {
        OpQ A = random_op(S), B = random_op(S);
        auto small = dense_mul(DenseWindow<Rational>::truncate(A, -12, 12), DenseWindow<Rational>::truncate(B, -12, 12));
        auto big = dense_mul(DenseWindow<Rational>::truncate(A, -20, 20), DenseWindow<Rational>::truncate(B, -20, 20));
        for (long i = small.safe_lo(); i < small.safe_hi(); ++i)
            for (long j = small.safe_lo(); j < small.safe_hi(); ++j) CHECK(small.at(i, j) == big.at(i, j));
        CHECK(agrees_on_safe(big, A * B));
    }
}

TEST_CASE("truncated loop inverse") {
    CyclicLoop a = CyclicLoop::one(1) - CyclicLoop::monomial(1, QMat::scalar(1, Rational(1, 2)));
    auto r = truncated_loop_inverse(a, 4);
    CyclicLoop want(1);
    for (int k = 0; k <= 4; ++k) want = want + CyclicLoop::monomial(k, QMat::scalar(1, Rational(1, 1 << k)));
    CHECK(r.series == want);
    CHECK(r.certified);
    CHECK(r.residual.min_exp() > 4);
    CHECK(r.residual == CyclicLoop::monomial(5, QMat::scalar(1, Rational(-1, 32))));

    Sampler S(2);
    for (int trial = 0; trial < 20; ++trial) {
        QMat c0 = S.invertible(2);
        CyclicLoop b = CyclicLoop::monomial(-1, c0) + CyclicLoop::monomial(0, S.matrix(2)) +
                       CyclicLoop::monomial(1, S.matrix(2));
        auto t = truncated_loop_inverse(b, 6);
        CHECK(t.residual.min_exp() > 6);
    }
    CHECK_THROWS_AS(truncated_loop_inverse(CyclicLoop::monomial(0, QMat::zero(2)) + CyclicLoop::monomial(1, QMat::zero(2)), 3),
                    NoInvertibleLeadingStructure);
    QMat sing = QMat::zero(2);
    sing(0, 0) = 1;
    CHECK_THROWS_AS(truncated_loop_inverse(CyclicLoop::monomial(0, sing), 3), NoInvertibleLeadingStructure);
}

TEST_CASE("float kernels agree bitwise") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int n : {1, 3, 4, 7, 16, 33}) {
        std::vector<double> a(n * n), b(n * n), c1(n * n), c2(n * n);
        for (auto& x : a) x = U(rng);
        for (auto& x : b) x = U(rng);
        f64::matmul_scalar(a.data(), b.data(), c1.data(), n);
        if (!f64::avx2_available()) continue;
        f64::matmul_avx2(a.data(), b.data(), c2.data(), n);
        CHECK(c1 == c2);
    }
    CHECK(std::string(f64::kernel_name(f64::selected_kernel())).size() > 0);
}
