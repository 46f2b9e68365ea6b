// Microbenchmarks for the hot paths: canonicalization, the full
// classification pipeline, the zero oracle, and the RK4 stepper.
#include "lienard/classify.hpp"
#include "lienard/oracle.hpp"
#include "lienard/parse.hpp"

#include <benchmark/benchmark.h>

using namespace lienard;

namespace {
Expr P(const std::string& s) { return parse(s); }
}  // namespace

static void BM_normalize_polynomial(benchmark::State& state) {
    const Expr raw = P("((1 + 2*x)^2 * (x - 3)^3 + x^5 - 7*x) * (x + 1) - x^6");
    for (auto _ : state) benchmark::DoNotOptimize(normalize(raw));
}
BENCHMARK(BM_normalize_polynomial);

static void BM_normalize_mixed(benchmark::State& state) {
    const Expr raw = P("exp(5/8 * x) * (7 * exp(-5/8 * x) + 3750 * exp(-5/8 * x) "
                       "* (5 + 8 * exp(-5/8 * x))^(-4)) - x^(-3) * (x^2 + 1)^2");
    for (auto _ : state) benchmark::DoNotOptimize(normalize(raw));
}
BENCHMARK(BM_normalize_mixed);

static void BM_decide_zero_fraction(benchmark::State& state) {
    const Expr e =
        normalize(P("(x + 1)^(-1) + (x - 1)^(-1) - 2 * x * (x^2 - 1)^(-1)"));
    const SamplingConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(decide_zero(e, cfg));
}
BENCHMARK(BM_decide_zero_fraction);

static void BM_classify_power_law(benchmark::State& state) {
    const Expr f = normalize(P("0"));
    const Expr g = normalize(P("(1 + 2*x)^2"));
    const ClassifyConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(classify(f, g, cfg));
}
BENCHMARK(BM_classify_power_law);

static void BM_classify_ermakov_pinney_exponential_weight(benchmark::State& state) {
    const Expr f = normalize(P("1"));
    const Expr g = normalize(P("exp(-4 * x)"));
    const ClassifyConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(classify(f, g, cfg));
}
BENCHMARK(BM_classify_ermakov_pinney_exponential_weight);

static void BM_rk4_harmonic(benchmark::State& state) {
    OracleConfig cfg;
    cfg.t_end = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            integrate_canonical([](double y) { return y; }, 1.0, 0.0, cfg));
}
BENCHMARK(BM_rk4_harmonic);

BENCHMARK_MAIN();
