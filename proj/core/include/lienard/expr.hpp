// Immutable symbolic expression trees with a deterministic canonical form.
//
// Trees are shared_ptr-linked DAGs of ExprNode; all rewriting is persistent
// (nodes are never mutated).  `normalize` maps every tree to a canonical
// representative of its equivalence class under the rewrite rules documented
// in expr.cpp; structural equality of canonical forms is then decided by
// `compare`.
#pragma once

#include "lienard/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lienard {

enum class Kind {
    Constant,       // exact rational literal
    NamedConstant,  // free symbolic parameter (alpha, beta, ...)
    Variable,       // independent variable of calculus operations
    Exp,            // exp(u)
    Log,            // log(u), natural
    Power,          // u^v
    Product,        // n-ary product
    Sum,            // n-ary sum
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    Kind kind;
    Rational value;          // Constant only
    std::string name;        // Variable / NamedConstant only
    std::vector<Expr> kids;  // Sum/Product: operands; Power: {base, exponent}; Exp/Log: {argument}
};

// Leaf builders.
Expr constant(Rational v);
Expr integer(long v);
Expr variable(std::string name);
Expr named_constant(std::string name);
const Expr& zero_expr();
const Expr& one_expr();

// Composite builders.  These construct raw structural nodes; call `normalize`
// to obtain the canonical form.  Subtraction, negation and division are
// expressed through the core node set: -u is (-1)*u, u/v is u*v^-1.
Expr sum(std::vector<Expr> kids);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr neg(Expr a);
Expr product(std::vector<Expr> kids);
Expr mul(Expr a, Expr b);
Expr div_expr(Expr a, Expr b);
Expr power(Expr base, Expr exponent);
Expr pow_int(Expr base, long k);
Expr exp_expr(Expr arg);
Expr log_expr(Expr arg);

// Queries.
std::optional<Rational> as_rational(const Expr& e);
bool is_constant_value(const Expr& e, const Rational& v);
bool contains_symbol(const Expr& e, const std::string& name);
bool contains_any_symbol(const Expr& e);
bool contains_kind(const Expr& e, Kind k);

// Total order on trees (kind rank, then payload, then children
// lexicographically).  Returns <0, 0, >0.  Equal canonical forms compare 0.
int compare(const Expr& a, const Expr& b);
bool equal(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Canonical form.  The cap variant raises the polynomial-expansion degree
// limit and treats exp/log subtrees as opaque atoms during expansion; it is
// used by the fraction-based zero test, where aggressive expansion is sound.
Expr normalize(const Expr& e);
Expr normalize_with_cap(const Expr& e, long degree_cap);

// Splits e == coeff * rest where coeff is the leading rational factor of a
// canonical term (1 if none) and rest carries no leading rational.
std::pair<Rational, Expr> split_coefficient(const Expr& e);

// Renders with minimal parentheses; the result parses back to an equal
// canonical form.  Rational exponents print parenthesized, e.g. x^(-3).
std::string to_string(const Expr& e);

}  // namespace lienard
