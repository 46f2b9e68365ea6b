// Layered zero- and constancy-decision oracle.
//
// A query first tries exact symbolic routes (canonical form, structural
// positivity, common-denominator polynomial collapse); only when those are
// silent does it fall back to low-discrepancy numeric sampling, and the
// verdict is then graded accordingly.  Unknown is reserved for queries where
// sampling itself was starved of valid points.
#pragma once

#include "lienard/calculus.hpp"

#include <optional>
#include <string>

namespace lienard {

enum class TriState { Yes, No, Unknown };
enum class Grade { Symbolic, Numeric };

struct SamplingConfig {
    std::string var = "x";
    double lo = 1.0;
    double hi = 2.0;
    int samples = 64;
    double tol = 1e-9;             // scaled-residual threshold for "zero"
    double min_denominator = 1e-6; // reject sample points closer to a pole
};

struct Decision {
    TriState state = TriState::Unknown;
    Grade grade = Grade::Numeric;
    double witness = 0;  // largest scaled residual seen on the numeric path
};

// Is e identically zero (as a function of cfg.var on cfg's interval)?
Decision decide_zero(const Expr& e, const SamplingConfig& cfg);

// Is e constant in cfg.var?  Equivalent to decide_zero of the derivative.
Decision decide_constant(const Expr& e, const SamplingConfig& cfg);

// The value of an expression already known to be constant in cfg.var.
// `exact` when it reduces to a rational, `closed_form` when it reduces to a
// variable-free tree (e.g. 2^(1/2)), `approx` always (NaN only if evaluation
// is impossible everywhere).
struct ValueReading {
    std::optional<Rational> exact;
    std::optional<Expr> closed_form;
    double approx = 0;
};
ValueReading read_value(const Expr& e, const SamplingConfig& cfg);

// Low-discrepancy point placement shared by all samplers: the index-th term
// of the van der Corput sequence in the given prime base, in (0, 1).
double halton(int index, int base);

const char* to_string(TriState s);
const char* to_string(Grade g);

}  // namespace lienard
