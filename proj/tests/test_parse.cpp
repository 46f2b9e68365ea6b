// Parser contract: exact rationals, the published grammar, and positioned
// diagnostics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lienard/parse.hpp"

using namespace lienard;

TEST_CASE("numbers parse as exact rationals") {
    CHECK(equal(normalize(parse("0.5")), constant(Rational(1, 2))));
    CHECK(equal(normalize(parse("2.25")), constant(Rational(9, 4))));
    CHECK(equal(normalize(parse("10")), integer(10)));
    CHECK(equal(normalize(parse("0.125")), constant(Rational(1, 8))));
    // leading zeros do not trigger octal interpretation
    CHECK(equal(normalize(parse("010")), integer(10)));
}

TEST_CASE("precedence and associativity") {
    CHECK(equal(normalize(parse("1 + 2 * 3")), integer(7)));
    CHECK(equal(normalize(parse("(1 + 2) * 3")), integer(9)));
    CHECK(equal(normalize(parse("8 / 4 / 2")), integer(1)));
    CHECK(equal(normalize(parse("1 - 2 - 3")), integer(-4)));
    CHECK(equal(normalize(parse("-x + x")), zero_expr()));
}

TEST_CASE("exponent grammar accepts negatives and parenthesized expressions") {
    CHECK(equal(normalize(parse("x^-3")), normalize(pow_int(variable("x"), -3))));
    CHECK(equal(normalize(parse("x^(-3)")), normalize(pow_int(variable("x"), -3))));
    CHECK(equal(normalize(parse("x^(1/2)")),
                normalize(power(variable("x"), constant(Rational(1, 2))))));
}

TEST_CASE("exp and log are reserved function names") {
    CHECK(equal(normalize(parse("exp(0)")), one_expr()));
    CHECK(equal(normalize(parse("log(exp(x))")), variable("x")));
    CHECK_THROWS_AS(parse("exp x"), SyntaxError);
}

TEST_CASE("no implicit multiplication") {
    CHECK_THROWS_AS(parse("2x"), SyntaxError);
    CHECK_THROWS_AS(parse("x(x+1)"), SyntaxError);
}

TEST_CASE("unknown symbols are rejected with position") {
    try {
        parse("x + t");
        FAIL("expected UnknownSymbol");
    } catch (const UnknownSymbol& e) {
        CHECK(e.symbol == "t");
        CHECK(e.position == 4);
    }
}

TEST_CASE("syntax errors carry position and expectation") {
    try {
        parse("x + ");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position >= 3);
        CHECK(!e.expected.empty());
    }
    CHECK_THROWS_AS(parse("(x + 1"), SyntaxError);
    CHECK_THROWS_AS(parse(""), SyntaxError);
    CHECK_THROWS_AS(parse("x + + 1"), SyntaxError);
}

TEST_CASE("declared named constants parse as symbols") {
    ParseOptions opts;
    opts.named_constants = {"alpha", "beta"};
    Expr e = parse("alpha * x + beta", opts);
    CHECK(contains_symbol(e, "alpha"));
    CHECK(contains_symbol(e, "beta"));
    CHECK_THROWS_AS(parse("alpha * x", ParseOptions{}), UnknownSymbol);
}

TEST_CASE("extra variables allowed only when requested") {
    ParseOptions opts;
    opts.allow_extra_variables = true;
    Expr e = parse("t * y", opts);
    CHECK(contains_symbol(e, "t"));
    CHECK(contains_symbol(e, "y"));
}

TEST_CASE("printing and reparsing is a fixed point") {
    const char* samples[] = {
        "x",           "-x",           "1/2 * x^2",     "exp(-5/8 * x)",
        "x + x^(-3)",  "(1 + 2*x)^2",  "log(x)^2 * x",  "2^(1/2) * x",
    };
    for (const char* s : samples) {
        const std::string once = to_string(normalize(parse(s)));
        const std::string twice = to_string(normalize(parse(once)));
        CHECK_MESSAGE(once == twice, s << " printed as " << once);
    }
}
