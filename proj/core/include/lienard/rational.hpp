// Exact rational arithmetic helpers built on boost::multiprecision.
//
// Everything the symbolic layer folds at compile-of-expression time goes
// through these functions so that no rounding ever enters a canonical form.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace lienard {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool rat_is_integer(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Narrowing accessor used where an exponent must fit a machine word.
inline std::optional<long> rat_to_long(const Rational& r) {
    if (!rat_is_integer(r)) return std::nullopt;
    const Integer n = rat_num(r);
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
        return std::nullopt;
    return static_cast<long>(n);
}

inline double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

// r^k for integer k, exact.  k may be negative; r must be nonzero then.
inline Rational rat_pow_int(const Rational& r, long k) {
    if (k == 0) return Rational(1);
    if (r == 0 && k < 0) throw std::domain_error("rat_pow_int: 0 to negative power");
    Rational base = k > 0 ? r : Rational(1) / r;
    unsigned long e = k > 0 ? static_cast<unsigned long>(k)
                            : static_cast<unsigned long>(-(k + 1)) + 1ul;
    Rational acc(1);
    while (e) {
        if (e & 1ul) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// Exact k-th root of a nonnegative integer, if it is a perfect power.
inline std::optional<Integer> int_root(const Integer& n, unsigned k) {
    if (k == 0) return std::nullopt;
    if (n < 0) return std::nullopt;
    if (n == 0 || n == 1 || k == 1) return n;
    Integer lo = 0, hi = n;
    while (lo <= hi) {
        Integer mid = (lo + hi) / 2;
        Integer p = boost::multiprecision::pow(mid, k);
        if (p == n) return mid;
        if (p < n)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return std::nullopt;
}

// Exact k-th root of a rational, sign-aware.  Returns nullopt unless both
// numerator and denominator are perfect k-th powers (so the result is again
// rational).  Negative input requires odd k.
inline std::optional<Rational> rat_root(const Rational& r, unsigned k) {
    if (k == 0) return std::nullopt;
    if (k == 1) return r;
    const bool neg = r < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    const Rational a = neg ? -r : r;
    auto rn = int_root(rat_num(a), k);
    if (!rn) return std::nullopt;
    auto rd = int_root(rat_den(a), k);
    if (!rd) return std::nullopt;
    Rational out(*rn, *rd);
    return neg ? -out : out;
}

// r^(p/q) when the result is exactly rational, else nullopt.
inline std::optional<Rational> rat_pow_rat(const Rational& r, const Rational& e) {
    auto le = rat_to_long(e);
    if (le) {
        if (r == 0 && *le < 0) return std::nullopt;
        return rat_pow_int(r, *le);
    }
    const Integer p = rat_num(e);
    const Integer q = rat_den(e);
    if (q > 64) return std::nullopt;  // roots beyond this never arise here
    auto root = rat_root(r, static_cast<unsigned>(q));
    if (!root) return std::nullopt;
    auto lp = rat_to_long(Rational(p));
    if (!lp) return std::nullopt;
    if (*root == 0 && *lp < 0) return std::nullopt;
    return rat_pow_int(*root, *lp);
}

// Parse a decimal literal ("0.25", "3", "1e-3" is *not* accepted) exactly.
inline Rational rat_from_decimal(const std::string& text) {
    auto as_integer = [](std::string digits) {
        // cpp_int would read a leading zero as an octal prefix
        const auto first = digits.find_first_not_of('0');
        if (first == std::string::npos) return Integer(0);
        return Integer(digits.substr(first));
    };
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(as_integer(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const size_t frac_len = text.size() - dot - 1;
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_len));
    return Rational(as_integer(digits), den);
}

inline std::string rat_to_string(const Rational& r) {
    if (rat_is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace lienard
