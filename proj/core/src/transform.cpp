#include "lienard/transform.hpp"

namespace lienard {

TransformData build_transform(const Expr& f, const Expr& g, DomainInterval domain) {
    TransformData t;
    t.f = normalize(f);
    t.g = normalize(g);
    t.domain = domain;

    if (auto intf = antiderivative(t.f, "x")) {
        t.int_f = normalize(*intf);
        t.M = normalize(exp_expr(*t.int_f));
    }
    if (t.M) {
        if (auto phi = antiderivative(*t.M, "x")) t.phi = normalize(*phi);
        t.G = normalize(mul(*t.M, t.g));
    }
    t.symbolic = t.M && t.phi && t.G;

    const Expr f_expr = t.f;
    const Expr g_expr = t.g;
    if (t.M) {
        const Expr M_expr = *t.M;
        t.M_eval = [M_expr](double x) { return eval(M_expr, {{"x", x}}); };
    } else {
        auto intf_num = std::make_shared<NumericAntiderivative>(
            [f_expr](double x) { return eval(f_expr, {{"x", x}}); }, domain.lo);
        t.M_eval = [intf_num](double x) { return std::exp((*intf_num)(x)); };
    }
    if (t.phi) {
        const Expr phi_expr = *t.phi;
        t.phi_eval = [phi_expr](double x) { return eval(phi_expr, {{"x", x}}); };
    } else {
        auto phi_num = std::make_shared<NumericAntiderivative>(t.M_eval, domain.lo);
        t.phi_eval = [phi_num](double x) { return (*phi_num)(x); };
    }
    if (t.G) {
        const Expr G_expr = *t.G;
        t.G_eval = [G_expr](double x) { return eval(G_expr, {{"x", x}}); };
    } else {
        auto M_eval = t.M_eval;
        t.G_eval = [M_eval, g_expr](double x) { return M_eval(x) * eval(g_expr, {{"x", x}}); };
    }
    return t;
}

Expr d_dy(const Expr& u, const Expr& M, const std::string& var) {
    return normalize(mul(power(M, integer(-1)), differentiate(u, var)));
}

Expr invariant_K(const Expr& G, const Expr& M, const std::string& var,
                 const SamplingConfig& cfg) {
    Expr G1 = d_dy(G, M, var);
    if (decide_zero(G1, cfg).state == TriState::Yes)
        throw DegenerateForce("force derivative vanishes identically; invariant undefined");
    Expr G2 = d_dy(G1, M, var);
    return normalize(product({G, G2, pow_int(G1, -2)}));
}

}  // namespace lienard
