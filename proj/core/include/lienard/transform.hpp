// The change of variables that removes the quadratic velocity term.
//
// For x'' + f(x) x'^2 + g(x) = 0 define M = exp(int f dx), y = Phi(x) with
// Phi' = M.  Then y'' + F(y) = 0 with F(Phi(x)) = M(x) g(x) =: G(x), and
// derivatives in y pull back through d/dy = M^-1 d/dx, so the whole decision
// procedure can run in the x chart without inverting Phi.
#pragma once

#include "lienard/decide.hpp"
#include "lienard/quadrature.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace lienard {

struct DomainInterval {
    double lo = 1.0;
    double hi = 2.0;
};

struct TransformData {
    Expr f, g;                  // normalized inputs, functions of x
    std::optional<Expr> int_f;  // int f dx, integration constant zero
    std::optional<Expr> M;      // exp(int f), normalized
    std::optional<Expr> phi;    // int M dx, integration constant zero
    std::optional<Expr> G;      // M * g, normalized
    // Numeric closures, always usable.  When the symbolic route is closed the
    // quadrature-backed versions anchor int f and Phi to zero at domain.lo;
    // that choice shifts G by a positive factor and Phi by a constant, which
    // leaves the symmetry class invariant.
    std::function<double(double)> M_eval;
    std::function<double(double)> phi_eval;
    std::function<double(double)> G_eval;
    DomainInterval domain;
    bool symbolic = false;  // M, phi and G all have closed forms
};

TransformData build_transform(const Expr& f, const Expr& g, DomainInterval domain);

// d u / dy for u given in the x chart: M^-1 du/dx, normalized.
Expr d_dy(const Expr& u, const Expr& M, const std::string& var = "x");

// Structural invariant K = F F'' / F'^2 of the canonical force, expressed in
// the x chart through G and M.  Throws DegenerateForce when dG/dy vanishes
// identically (constant force), where the invariant is undefined.
Expr invariant_K(const Expr& G, const Expr& M, const std::string& var,
                 const SamplingConfig& cfg);

}  // namespace lienard
