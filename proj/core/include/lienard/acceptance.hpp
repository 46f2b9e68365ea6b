// Built-in verification catalogue and the checks behind `lienard selftest`.
//
// The catalogue pins eight named equations that jointly exercise every
// symmetry class and both nonzero-f constructions; the check groups cover
// classification labels, randomized round-trips through the canonical form,
// generator certification with negative controls, trajectory-level
// transformation and energy certificates, the expression-core contracts, and
// scaling invariance of the decision chain.
#pragma once

#include "lienard/classify.hpp"

#include <iosfwd>

namespace lienard {

struct CatalogueInstance {
    std::string name;  // slug used in check names, e.g. "power-law"
    std::string f_text, g_text;
    SymmetryCase expected_case;
    std::optional<LinearSubtype> expected_subtype;
    int expected_dimension = 1;
    std::string expected_algebra;
    std::map<std::string, Rational> expected_params;
    double x0 = 1, v0 = 0;  // initial conditions for trajectory checks
};

const std::vector<CatalogueInstance>& acceptance_catalogue();

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every check whose name contains `filter` (empty runs all), streaming
// one "[PASS|FAIL] name  detail" line per check to `os` as it completes.
// Check groups, in order: classification/<slug>, round-trip/random-instances,
// generators/{certification,negative-controls}, transform/<slug> (+ the
// closed-form comparison), energy/<slug>, exprcore/*, scaling/<slug>.
std::vector<CheckResult> run_acceptance(const std::string& filter, std::ostream& os);

}  // namespace lienard
