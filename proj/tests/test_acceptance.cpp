// Meta-test over the verification catalogue: the set of failing checks is
// pinned, so any regression elsewhere (or an unexpected new pass) is caught.
//
// The two expected failures are trajectory-level mapping checks whose pinned
// instances leave the trustworthy integration regime long before the
// requested horizon:
//   - transform/generic: the force exp(x) + x^2 is bounded below by ~0.83, so
//     x'' <= -0.83 everywhere and every trajectory blows up in finite time.
//   - transform/ep: under the force x + x^(-3) every trajectory reaches the
//     y = 0 singularity within a quarter period (roughly t = pi/2 for unit
//     amplitude) regardless of the initial state: the force is attractive
//     everywhere and the potential drops to -infinity at the origin.
// Both runs truncate on the integrator's error budget and the residual over
// the kept window exceeds the tolerance; the detail strings record this.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lienard/acceptance.hpp"

#include <set>
#include <sstream>
#include <string>

using namespace lienard;

TEST_CASE("the verification catalogue fails exactly on the two documented checks") {
    std::ostringstream sink;
    const auto results = run_acceptance("", sink);
    REQUIRE(!results.empty());

    std::set<std::string> names, failing;
    for (const auto& r : results) {
        CHECK_MESSAGE(names.insert(r.name).second, "duplicate check name " << r.name);
        if (!r.pass) failing.insert(r.name);
    }
    const std::set<std::string> expected = {"transform/generic", "transform/ep"};
    CHECK_MESSAGE(failing == expected, "failing set changed: " << [&] {
        std::string s;
        for (const auto& n : failing) s += n + " ";
        return s;
    }());

    // the documented failures carry their truncation analysis
    for (const auto& r : results) {
        if (!expected.count(r.name)) continue;
        CHECK(r.detail.find("truncated window") != std::string::npos);
        CHECK(r.detail.find("error-budget") != std::string::npos);
    }
}

TEST_CASE("filtering runs exactly the matching checks") {
    std::ostringstream sink;
    const auto all = run_acceptance("", sink);
    const auto energy = run_acceptance("energy", sink);
    CHECK(energy.size() == 8);
    for (const auto& r : energy) {
        CHECK(r.name.find("energy") != std::string::npos);
        CHECK(r.pass);
    }
    CHECK(all.size() > energy.size());
}
