// Symbolic calculus over expression trees: exact differentiation, a small
// antiderivative rule base, substitution, numeric evaluation and a
// common-denominator decomposition used by the zero-equivalence test.
#pragma once

#include "lienard/errors.hpp"
#include "lienard/expr.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lienard {

// d e / d var.  The result is structurally correct but not normalized.
Expr differentiate(const Expr& e, const std::string& var);

// Elementary antiderivative with integration constant zero, or nullopt when
// the integrand is outside the rule base (the numeric quadrature path takes
// over in that case).  Covers: expressions free of var, sums, products with a
// single var-dependent factor, (a + c*var)^r for constant rational r
// (including r = -1 -> log), and exp(a + c*var).
std::optional<Expr> antiderivative(const Expr& e, const std::string& var);

// Replaces every Variable or NamedConstant named `name`.  Not normalized.
Expr substitute(const Expr& e, const std::string& name, const Expr& replacement);

using Bindings = std::map<std::string, double>;

struct EvalDetail {
    double value = 0;
    // Largest |value| over all subexpressions; scales relative comparisons.
    double max_abs = 0;
    // Smallest |denominator| encountered (bases of negative powers, log
    // arguments); small values flag proximity to a pole.
    double min_den_mag = std::numeric_limits<double>::infinity();
};

double eval(const Expr& e, const Bindings& bindings);
EvalDetail eval_detailed(const Expr& e, const Bindings& bindings);

// e == num / prod(den[i].first ^ den[i].second) wherever both sides are
// defined; den exponents are positive integers, den bases normalized.  num is
// raw (not normalized).  e vanishes exactly where num does, away from poles.
struct Fraction {
    Expr num;
    std::vector<std::pair<Expr, long>> den;
};
Fraction to_fraction(const Expr& e);

// b == a + c*var with a, c free of var and c nonzero, if b has that shape.
std::optional<std::pair<Expr, Expr>> affine_parts(const Expr& b, const std::string& var);

}  // namespace lienard
