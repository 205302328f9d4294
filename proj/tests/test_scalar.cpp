#include "doctest.h"

#include "bott/circle.hpp"
#include "bott/loop.hpp"

using namespace bott;

namespace {

const CircleScalar T = CircleScalar::t();
const CircleScalar S = CircleScalar::s();

CircleScalar random_scalar(Sampler& rng) {
    auto poly = [&] {
        return Poly(std::vector<Rational>{rng.small_rational(), rng.small_rational(), rng.small_rational()});
    };
    Poly den = Poly(std::vector<Rational>{1, rng.small_rational(1, 3)});
    return CircleScalar(RatFunc(poly(), den), RatFunc(poly()));
}

}  // namespace

TEST_CASE("circle_mul reduces s^2") {
    CHECK(S * S == CircleScalar(1) - T * T);
    CircleScalar p = CircleScalar(3) + T;
    CHECK(p * S == CircleScalar(RatFunc(), p.p()));
    CHECK((S - T) * (S + T) == CircleScalar(1) - CircleScalar(2) * T * T);
}

TEST_CASE("circle_eval substitutes") {
    auto p = CirclePoint::at(Rational(3, 5), Rational(4, 5));
    CHECK(circle_eval(S, p) == Rational(4, 5));
    CHECK(circle_eval(CircleScalar(1) - T * T, p) == Rational(16, 25));
    CHECK(circle_eval(S * S, CirclePoint::at(1, 0)) == 0);
    CHECK_THROWS_AS(circle_eval(S, CirclePoint::symbol()), SymbolicPoint);
    CircleScalar pole(RatFunc(Poly(1), Poly(std::vector<Rational>{-1, 1})));
    CHECK_THROWS_AS(circle_eval(pole, CirclePoint::at(1, 0)), std::domain_error);
}

TEST_CASE("circle points") {
    CHECK_THROWS(CirclePoint::at(1, 1));
    auto g1 = pythagorean_grid(1);
    REQUIRE(g1.size() == 2);
    CHECK(g1[0] == CirclePoint::at(0, 1));
    CHECK(g1[1] == CirclePoint::at(1, 0));
    auto g = pythagorean_grid(6);
    CHECK(g.size() == 7);
    bool has = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g[i].t * g[i].t + g[i].s * g[i].s == 1);
        CHECK(g[i].t >= 0);
        CHECK(g[i].t <= 1);
        if (i) CHECK(g[i - 1].t < g[i].t);
        if (g[i] == CirclePoint::at(Rational(4, 5), Rational(3, 5))) has = true;
    }
    CHECK(has);
    CHECK(CirclePoint::at(1, 0).delta_plus());
    CHECK(!CirclePoint::at(Rational(3, 5), Rational(4, 5)).delta_plus());
    CHECK(CirclePoint::at(-1, 0).delta_minus());
    CHECK(!CirclePoint::symbol().delta_plus());
}

TEST_CASE("circle ring axioms and evaluation homomorphism") {
    Sampler rng(7);
    auto pts = pythagorean_grid(4);
    for (int it = 0; it < 20; ++it) {
        CircleScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == CircleScalar(1));
        for (const auto& p : pts) {
            Rational ea, eb;
            try {
                ea = circle_eval(a, p);
                eb = circle_eval(b, p);
            } catch (const std::domain_error&) {
                continue;
            }
            CHECK(circle_eval(a * b, p) == ea * eb);
        }
    }
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(to_string(parse_rational("-6/8")) == "-3/4");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("noncommutative coefficient algebra") {
    QMat x = QMat::zero(2), y = QMat::zero(2);
    x(0, 1) = 1;
    y(1, 0) = 1;
    CHECK(x * y != y * x);
    CHECK((x * y).transpose() == y.transpose() * x.transpose());
}
