// Error hierarchy shared by the symbolic and numeric layers.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lienard {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text; `position` is a 0-based byte offset into the source.
struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t position, std::string expected)
        : Error(what), position(position), expected(std::move(expected)) {}
    std::size_t position;
    std::string expected;
};

// A symbol that is neither the declared variable nor a declared constant.
struct UnknownSymbol : Error {
    UnknownSymbol(const std::string& what, std::string symbol, std::size_t position)
        : Error(what), symbol(std::move(symbol)), position(position) {}
    std::string symbol;
    std::size_t position;
};

// Numeric evaluation left the real domain (log of a nonpositive value,
// fractional power of a negative base, zero to a negative power, ...).
struct DomainError : Error {
    using Error::Error;
};

// Evaluation reached a symbol with no binding.
struct UnboundSymbol : Error {
    explicit UnboundSymbol(std::string symbol)
        : Error("unbound symbol: " + symbol), symbol(std::move(symbol)) {}
    std::string symbol;
};

// Adaptive quadrature failed to converge on the requested interval.
struct QuadratureFailure : Error {
    using Error::Error;
};

// The structural invariant of the restoring force is undefined (its first
// derivative vanishes identically, i.e. the force is constant).
struct DegenerateForce : Error {
    using Error::Error;
};

}  // namespace lienard
