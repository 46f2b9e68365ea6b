// The canonical change of variables: M = exp(int f), y = Phi with Phi' = M,
// F(Phi) = M g, and the pullback d/dy = M^-1 d/dx.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lienard/parse.hpp"
#include "lienard/transform.hpp"

#include <cmath>

using namespace lienard;

namespace {
Expr P(const std::string& s) { return normalize(parse(s)); }
const DomainInterval dom{1.0, 2.0};
}  // namespace

TEST_CASE("f = 0 is the identity chart") {
    TransformData T = build_transform(P("0"), P("x^3"), dom);
    REQUIRE(T.symbolic);
    CHECK(equal(*T.M, one_expr()));
    CHECK(equal(*T.phi, variable("x")));
    CHECK(equal(*T.G, P("x^3")));
}

TEST_CASE("f = 1/x gives M = x and a parabolic chart") {
    TransformData T = build_transform(P("x^(-1)"), P("x / 2"), dom);
    REQUIRE(T.symbolic);
    CHECK(equal(*T.M, variable("x")));
    CHECK(equal(*T.phi, P("1/2 * x^2")));
    CHECK(equal(*T.G, P("1/2 * x^2")));  // G = phi, i.e. F(y) = y
}

TEST_CASE("constant f gives an exponential chart") {
    TransformData T = build_transform(P("2"), P("exp(-2 * x)"), dom);
    REQUIRE(T.symbolic);
    CHECK(equal(*T.M, P("exp(2 * x)")));
    CHECK(equal(*T.phi, P("1/2 * exp(2 * x)")));
    CHECK(equal(*T.G, one_expr()));
}

TEST_CASE("numeric closures agree with the closed forms") {
    TransformData T = build_transform(P("x^(-1)"), P("x / 2"), dom);
    for (double x : {1.0, 1.25, 1.5, 2.0}) {
        CHECK(T.M_eval(x) == doctest::Approx(x));
        CHECK(T.phi_eval(x) == doctest::Approx(x * x / 2));
        CHECK(T.G_eval(x) == doctest::Approx(x * x / 2));
    }
}

TEST_CASE("non-elementary weight falls back to quadrature closures") {
    // int x dx = x^2/2, so M = exp(x^2/2) has no elementary antiderivative
    TransformData T = build_transform(P("x"), P("x"), dom);
    CHECK(!T.symbolic);
    CHECK(!T.phi.has_value());
    REQUIRE(T.M.has_value());  // M itself is closed-form
    CHECK(T.M_eval(1.5) == doctest::Approx(std::exp(1.5 * 1.5 / 2)));
    // phi anchored at domain.lo, strictly increasing with phi' = M
    CHECK(T.phi_eval(dom.lo) == doctest::Approx(0.0));
    const double a = T.phi_eval(1.4), b = T.phi_eval(1.6);
    CHECK(a < b);
    const double mid = (T.phi_eval(1.5 + 1e-5) - T.phi_eval(1.5 - 1e-5)) / 2e-5;
    CHECK(mid == doctest::Approx(T.M_eval(1.5)).epsilon(1e-6));
}

TEST_CASE("d_dy inverts the chart derivative") {
    TransformData T = build_transform(P("x^(-1)"), P("x / 2"), dom);
    // dy/dy == 1 expressed in the x chart
    CHECK(equal(d_dy(*T.phi, *T.M), one_expr()));
    // d/dy of G recovers F' = 1 for the linear canonical force
    CHECK(equal(d_dy(*T.G, *T.M), one_expr()));
}

TEST_CASE("invariant K is constant exactly for power forces") {
    SamplingConfig scfg;
    TransformData T = build_transform(P("0"), P("x^3"), dom);
    Expr K = invariant_K(*T.G, *T.M, "x", scfg);
    Decision d = decide_constant(K, scfg);
    CHECK(d.state == TriState::Yes);
    ValueReading v = read_value(K, scfg);
    REQUIRE(v.exact.has_value());
    CHECK(*v.exact == Rational(2, 3));  // (n-1)/n with n = 3
}

TEST_CASE("invariant K is undefined for constant forces") {
    SamplingConfig scfg;
    TransformData T = build_transform(P("0"), P("5"), dom);
    CHECK_THROWS_AS(invariant_K(*T.G, *T.M, "x", scfg), DegenerateForce);
}

TEST_CASE("exponential canonical force has K identically one") {
    SamplingConfig scfg;
    TransformData T = build_transform(P("0"), P("exp(2 * x)"), dom);
    Expr K = invariant_K(*T.G, *T.M, "x", scfg);
    Decision one = decide_zero(normalize(sub(K, one_expr())), scfg);
    CHECK(one.state == TriState::Yes);
    CHECK(one.grade == Grade::Symbolic);
}
