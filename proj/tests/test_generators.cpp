// Generator catalogue: determining-equation residuals, closure consistency,
// chart pullback, and the corrupted-entry negative control.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lienard/classify.hpp"
#include "lienard/parse.hpp"
#include "lienard/report.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

using namespace lienard;

namespace {
Expr P(const std::string& s) { return normalize(parse(s)); }

Expr chart_expr(const std::string& s) {
    ParseOptions opts;
    opts.variable = "y";
    opts.allow_extra_variables = true;  // t
    return normalize(parse(s, opts));
}

SymmetryReport run(const std::string& f, const std::string& g, bool numeric_only = false) {
    ClassifyConfig cfg;
    cfg.numeric_only = numeric_only;
    return classify(P(f), P(g), cfg);
}

// Evaluation closures for an identity chart (f = 0): y = x, F = g, F' = g'.
struct Chart {
    std::function<double(double)> G, G1, phi;
};
Chart identity_chart(const std::string& g_text) {
    Expr g = P(g_text);
    Expr g1 = normalize(differentiate(g, "x"));
    return {[g](double x) { return eval(g, {{"x", x}}); },
            [g1](double x) { return eval(g1, {{"x", x}}); },
            [](double x) { return x; }};
}
}  // namespace

TEST_CASE("catalogue residual expressions collapse to zero structurally") {
    struct Row {
        const char* f, *g, *force;  // force in the canonical variable y
        int min_symbolic;           // generators with printable tau/eta
    } rows[] = {
        {"0", "0", "0", 3},                // free particle, dim 8
        {"0", "x", "y", 1},                // homogeneous linear: the extra pair is
                                           // trigonometric in t, numeric-only
        {"0", "x^3", "y^3", 2},            // power force
        {"0", "exp(2*x)", "exp(2*y)", 2},  // exponential force
        {"0", "x^(-3)", "y^(-3)", 3},      // inverse-cube force
    };
    for (const Row& row : rows) {
        CAPTURE(std::string(row.g));
        SymmetryReport rep = run(row.f, row.g);
        Expr F = chart_expr(row.force);
        int symbolic = 0;
        for (const Generator& gen : rep.generators) {
            if (!gen.tau_sym || !gen.eta_sym) continue;
            ++symbolic;
            Expr R = symmetry_residual_expr(*gen.tau_sym, *gen.eta_sym, F);
            CHECK_MESSAGE(equal(R, zero_expr()),
                          row.g << " / " << gen.label << ": residual " << to_string(R));
        }
        CHECK(symbolic >= row.min_symbolic);
    }
}

TEST_CASE("every certified generator from the classifier passes its residual") {
    const char* instances[][2] = {{"0", "exp(x) + x^2"}, {"0", "x^3"},       {"0", "exp(2*x)"},
                                  {"0", "x^(-3)"},       {"0", "x + x^(-3)"}, {"0", "x"},
                                  {"x^(-1)", "x / 2"},   {"1", "exp(-4*x)"}};
    for (const auto& inst : instances) {
        CAPTURE(inst[1]);
        SymmetryReport rep = run(inst[0], inst[1]);
        for (const Generator& gen : rep.generators) {
            CAPTURE(gen.label);
            CHECK(gen.residual >= 0);
            CHECK(gen.residual < 1e-8);
        }
    }
}

TEST_CASE("closures agree with the printed symbols") {
    SymmetryReport rep = run("0", "x^3");
    for (const Generator& gen : rep.generators) {
        if (!gen.tau_sym || !gen.eta_sym) continue;
        for (double t : {-1.0, 0.5}) {
            for (double y : {0.7, 1.8}) {
                const Bindings b{{"t", t}, {"y", y}};
                CHECK(gen.fns.tau(t, y) == doctest::Approx(eval(*gen.tau_sym, b)));
                CHECK(gen.fns.eta(t, y) == doctest::Approx(eval(*gen.eta_sym, b)));
            }
        }
    }
}

TEST_CASE("time translation is always first and exactly symmetric") {
    Generator tt = time_translation();
    CHECK(tt.label == "time translation");
    CHECK(equal(symmetry_residual_expr(*tt.tau_sym, *tt.eta_sym, chart_expr("y^(-3)")),
                zero_expr()));
}

TEST_CASE("a generator certified against a mismatched force fails loudly") {
    SymmetryReport exp_rep = run("0", "exp(2*x)");
    REQUIRE(exp_rep.generators.size() >= 2);
    const Generator& foreign = exp_rep.generators[1];  // the non-trivial one
    Chart chart = identity_chart("x^(-3)");
    const double r =
        symmetry_residual(foreign, chart.G, chart.G1, chart.phi, DomainInterval{1.0, 2.0}, 100);
    CHECK(r > 1e-2);
}

TEST_CASE("a corrupted catalogue entry is detected and named") {
    SymmetryReport rep = run("0", "x^3");
    Chart chart = identity_chart("x^3");
    std::vector<std::string> failures;
    for (size_t i = 0; i < rep.generators.size(); ++i) {
        Generator gen = rep.generators[i];
        if (i == 1) {  // tamper with the scaling symmetry's coefficient
            auto orig = gen.fns.eta;
            gen.fns.eta = [orig](double t, double y) { return orig(t, y) + 0.05; };
        }
        const double r =
            symmetry_residual(gen, chart.G, chart.G1, chart.phi, DomainInterval{1.0, 2.0}, 100);
        if (!(r >= 0 && r < 1e-8))
            failures.push_back("power-law/" + gen.label);
    }
    REQUIRE(failures.size() == 1);
    CHECK(failures[0].find("power-law") != std::string::npos);
}

TEST_CASE("generators pull back to the original chart through xi = eta / M") {
    // canonical scaling t d/dt - y d/dy maps to t d/dt - (x/2) d/dx when
    // f = 1/x (M = x, y = x^2/2)
    TransformData T = build_transform(P("x^(-1)"), P("x / 2"), DomainInterval{1.0, 2.0});
    Generator gen = symbolic_generator("scaling", chart_expr("t"), chart_expr("-y"));
    auto xi = original_chart_xi(gen, T);
    REQUIRE(xi.has_value());
    CHECK(equal(*xi, P("-1/2 * x")));

    // identity chart: xi is eta with y renamed to x
    TransformData I = build_transform(P("0"), P("x^3"), DomainInterval{1.0, 2.0});
    Generator sc = symbolic_generator("scaling", chart_expr("t"), chart_expr("-y"));
    auto xi2 = original_chart_xi(sc, I);
    REQUIRE(xi2.has_value());
    CHECK(equal(*xi2, P("-x")));
}

TEST_CASE("numeric-only mode still certifies generators through closures") {
    SymmetryReport rep = run("x^(-1)", "x / 2", /*numeric_only=*/true);
    CHECK(rep.dimension == 8);
    for (const Generator& gen : rep.generators) {
        CAPTURE(gen.label);
        CHECK(!gen.description.empty());
        CHECK(gen.residual >= 0);
        CHECK(gen.residual < 1e-8);
    }
}
