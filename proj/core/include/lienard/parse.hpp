// Recursive-descent parser for coefficient expressions.
//
// Grammar (whitespace insensitive):
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := base ['^' exponent]
//   exponent := ['-'] NUMBER | '(' expr ')'
//   base     := NUMBER | SYMBOL | '(' expr ')' | ('exp' | 'log') '(' expr ')'
//   NUMBER   := digits ['.' digits]            (parsed exactly as a rational)
//
// There is no implicit multiplication.  `exp` and `log` are reserved words.
// A SYMBOL must be the declared variable or one of the declared named
// constants; anything else raises UnknownSymbol (or, with
// allow_extra_variables, becomes an additional Variable — used internally
// when reading multi-variable expressions back in tests).
#pragma once

#include "lienard/errors.hpp"
#include "lienard/expr.hpp"

#include <string>
#include <vector>

namespace lienard {

struct ParseOptions {
    std::string variable = "x";
    std::vector<std::string> named_constants = {};
    bool allow_extra_variables = false;
};

Expr parse(const std::string& text, const ParseOptions& options = {});

}  // namespace lienard
