// The numeric oracle: RK4 convergence order, exactness checks against closed
// solutions, trajectory mapping, energy bookkeeping, and truncation guards.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lienard/oracle.hpp"
#include "lienard/parse.hpp"

#include <cmath>

using namespace lienard;

namespace {
Expr P(const std::string& s) { return normalize(parse(s)); }

// Max |x(t) - cos(t)| for the harmonic oscillator integrated at step h.
double harmonic_error(double h) {
    OracleConfig cfg;
    cfg.t_end = 2.0;
    cfg.h = h;
    cfg.error_budget = 1.0;  // disable the truncation guard for this study
    Trajectory tr = integrate_lienard(P("0"), P("x"), 1.0, 0.0, cfg);
    REQUIRE(!tr.truncated);
    double worst = 0;
    for (size_t i = 0; i < tr.t.size(); ++i)
        worst = std::max(worst, std::abs(tr.x[i] - std::cos(tr.t[i])));
    return worst;
}
}  // namespace

TEST_CASE("fourth-order convergence on the harmonic oscillator") {
    const double e1 = harmonic_error(1e-2);
    const double e2 = harmonic_error(5e-3);
    const double e3 = harmonic_error(2.5e-3);
    // halving the step must cut the error by about 2^4; demand at least 7.2x
    CHECK(e1 / e2 >= 7.2);
    CHECK(e2 / e3 >= 7.2);
}

TEST_CASE("harmonic oscillator crosses zero at t = pi/2") {
    OracleConfig cfg;
    cfg.t_end = std::acos(-1.0) / 2;
    Trajectory tr = integrate_lienard(P("0"), P("x"), 1.0, 0.0, cfg);
    REQUIRE(!tr.truncated);
    CHECK(tr.t.back() == doctest::Approx(cfg.t_end).epsilon(1e-12));
    CHECK(std::abs(tr.x.back()) <= 1e-8);
}

TEST_CASE("free particle trajectories are exact") {
    OracleConfig cfg;
    Trajectory tr = integrate_lienard(P("0"), P("0"), 0.25, 0.5, cfg);
    REQUIRE(!tr.truncated);
    for (size_t i = 0; i < tr.t.size(); ++i) {
        CHECK(std::abs(tr.x[i] - (0.25 + 0.5 * tr.t[i])) < 1e-12);
        CHECK(std::abs(tr.v[i] - 0.5) < 1e-12);
    }
}

TEST_CASE("canonical-equation integrator reproduces sin t") {
    OracleConfig cfg;
    cfg.t_end = 1.0;
    Trajectory tr = integrate_canonical([](double y) { return y; }, 0.0, 1.0, cfg);
    REQUIRE(!tr.truncated);
    CHECK(std::abs(tr.x.back() - std::sin(1.0)) < 1e-8);
}

TEST_CASE("mapped trajectory applies y = phi(x) and y' = M x'") {
    TransformData T = build_transform(P("x^(-1)"), P("x / 2"), DomainInterval{1.0, 2.0});
    OracleConfig cfg;
    cfg.t_end = 1.0;
    Trajectory tr = integrate_lienard(P("x^(-1)"), P("x / 2"), 1.0, 0.0, cfg);
    MappedTrajectory m = map_trajectory(tr, T);
    REQUIRE(m.t.size() == tr.t.size());
    for (size_t i = 0; i < m.t.size(); i += 100) {
        CHECK(m.y[i] == doctest::Approx(tr.x[i] * tr.x[i] / 2));
        CHECK(m.yd[i] == doctest::Approx(tr.x[i] * tr.v[i]));
    }
}

TEST_CASE("transformation residual is small for a faithful chart") {
    TransformData T = build_transform(P("0"), P("x"), DomainInterval{1.0, 2.0});
    OracleConfig cfg;
    Trajectory tr = integrate_lienard(P("0"), P("x"), 1.0, 0.0, cfg);
    MappedTrajectory m = map_trajectory(tr, T);
    const double r = transformation_residual(m);
    CHECK(r >= 0);
    CHECK(r < 1e-6);
}

TEST_CASE("energy is conserved along the inverse-cube trajectory") {
    TransformData T = build_transform(P("0"), P("x^(-3)"), DomainInterval{1.0, 2.0});
    OracleConfig cfg;
    Trajectory tr = integrate_lienard(P("0"), P("x^(-3)"), 2.0, 1.0, cfg);
    REQUIRE(!tr.truncated);
    MappedTrajectory m = map_trajectory(tr, T);
    const double drift = energy_drift(m, build_potential(T));
    CHECK(drift >= 0);
    CHECK(drift < 1e-9);
}

TEST_CASE("magnitude guard truncates runaway trajectories") {
    OracleConfig cfg;
    cfg.magnitude_cap = 100.0;
    cfg.error_budget = 1.0;  // isolate the magnitude guard
    // x'' = x grows exponentially from these initial conditions
    Trajectory tr = integrate_lienard(P("0"), P("-x"), 1.0, 1.0, cfg);
    CHECK(tr.truncated);
    CHECK(tr.reason == "magnitude");
    CHECK(tr.t.back() < cfg.t_end);
}

TEST_CASE("pole guard truncates before the vector field blows up") {
    OracleConfig cfg;
    cfg.error_budget = 1.0;  // isolate the pole guard
    // f = 1/x: the right side sees denominator x, which crosses pole_guard
    Trajectory tr = integrate_lienard(P("x^(-1)"), P("0"), 0.5, -1.0, cfg);
    CHECK(tr.truncated);
    CHECK(tr.reason == "pole-guard");
    CHECK(std::abs(tr.x.back()) > cfg.pole_guard * 0.5);
}

TEST_CASE("domain errors truncate with their own label") {
    OracleConfig cfg;
    cfg.error_budget = 1.0;  // isolate the domain check
    // g = sqrt(x) has no denominator to trip the pole guard; pushing the
    // trajectory into x < 0 leaves the domain instead
    Trajectory tr = integrate_lienard(P("0"), P("x^(1/2)"), 0.5, -2.0, cfg);
    CHECK(tr.truncated);
    CHECK(tr.reason == "domain-error");
}

TEST_CASE("error budget truncates stiff excursions") {
    OracleConfig cfg;  // default budget 1e-13
    Trajectory tr = integrate_lienard(P("0"), P("exp(x) + x^2"), 0.0, 1.0, cfg);
    CHECK(tr.truncated);
    CHECK(tr.reason == "error-budget");
    CHECK(tr.t.back() > 1.0);  // a usable prefix window remains
}

TEST_CASE("canonical integrator truncates on non-finite forces") {
    OracleConfig cfg;
    Trajectory tr = integrate_canonical(
        [](double y) { return y < 2.0 ? y : std::numeric_limits<double>::quiet_NaN(); }, 1.0,
        2.0, cfg);
    CHECK(tr.truncated);
    CHECK(tr.reason == "nonfinite");
}
