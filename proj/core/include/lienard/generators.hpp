// Symmetry generator catalogue and residual certification.
//
// A point symmetry X = tau(t) d/dt + eta(t,y) d/dy of y'' + F(y) = 0 must
// satisfy the determining equation
//   R = eta_tt + 2 y' eta_ty + y'^2 eta_yy - y' tau_tt
//       - F (eta_y - 2 tau_t) + eta F' = 0        identically in (t, y, y').
// Every generator carries analytic partial-derivative callables so the
// residual can be certified numerically through one code path, whether or
// not the coefficients have printable closed forms.
#pragma once

#include "lienard/transform.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lienard {

struct GeneratorFns {
    std::function<double(double, double)> tau, tau_t, tau_tt;
    std::function<double(double, double)> eta, eta_t, eta_y, eta_tt, eta_ty, eta_yy;
};

struct Generator {
    std::string label;
    std::optional<Expr> tau_sym, eta_sym;  // in symbols t, y when printable
    GeneratorFns fns;
    bool printable = false;
    std::string description;  // human-readable form for opaque coefficients
    double residual = -1;     // filled in by certification; -1 = not certified
};

// Exact parameter holder: `exact` when rational, `closed_form` when it folds
// to a variable-free tree (e.g. 2^(1/2)), `value` always.
struct ParamValue {
    std::optional<Rational> exact;
    std::optional<Expr> closed_form;
    double value = 0;
    std::string text() const;
};

// Builds a generator with symbolic coefficients; derivative callables come
// from exact differentiation.
Generator symbolic_generator(std::string label, const Expr& tau, const Expr& eta);

// The trivial time translation d/dt, admitted by every autonomous equation.
Generator time_translation();

// Determining-equation residual as an expression in (t, y, yd), for a force
// F given as an expression in y.  Canonical catalogue entries collapse to 0.
Expr symmetry_residual_expr(const Expr& tau, const Expr& eta, const Expr& F_y);

// Max |R| over a low-discrepancy sample of (t, x, yd) with y = phi(x),
// F = G(x), F' = G1(x); works without inverting phi.  Throwing sample points
// are skipped; fewer than half valid yields -1 (certification unavailable).
double symmetry_residual(const Generator& gen, const std::function<double(double)>& G_eval,
                         const std::function<double(double)>& G1_eval,
                         const std::function<double(double)>& phi_eval, DomainInterval domain,
                         int points);

}  // namespace lienard
