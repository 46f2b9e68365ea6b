#include "lienard/classify.hpp"

#include <cmath>
#include <sstream>

namespace lienard {

namespace {

std::function<double(double, double)> eval2(const Expr& e) {
    return [e](double t, double y) { return eval(e, {{"t", t}, {"y", y}}); };
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// "y", "(y + c)" or "(y - |c|)" for human-readable coefficient strings.
std::string shift_str(double c) {
    if (c == 0) return "y";
    if (c < 0) return "(y - " + fmt(-c) + ")";
    return "(y + " + fmt(c) + ")";
}

// "k*rest", with the redundant "1*" and "-1*" collapsed.
std::string coef_str(double k, const std::string& rest) {
    if (k == 1) return rest;
    if (k == -1) return "-" + rest;
    return fmt(k) + "*" + rest;
}

// Null when the parameter has no exact or closed form.
Expr param_expr(const ParamValue& p) {
    if (p.exact) return constant(*p.exact);
    if (p.closed_form) return *p.closed_form;
    return nullptr;
}

const ParamValue* find_param(const std::map<std::string, ParamValue>& params,
                             const std::string& key) {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
}

Generator opaque_generator(std::string label, std::string description, GeneratorFns fns) {
    Generator g;
    g.label = std::move(label);
    g.description = std::move(description);
    g.fns = std::move(fns);
    g.printable = false;
    return g;
}

GeneratorFns zero_fns() {
    auto z = [](double, double) { return 0.0; };
    return GeneratorFns{z, z, z, z, z, z, z, z, z};
}

// tau = 0, eta = v(t) with v'' = -A v: a solution translation of the linear
// equation, here with trigonometric v (A > 0) that has no tree form.
Generator trig_translation(double omega, bool cosine) {
    GeneratorFns fns = zero_fns();
    const double w = omega;
    if (cosine) {
        fns.eta = [w](double t, double) { return std::cos(w * t); };
        fns.eta_t = [w](double t, double) { return -w * std::sin(w * t); };
        fns.eta_tt = [w](double t, double) { return -w * w * std::cos(w * t); };
    } else {
        fns.eta = [w](double t, double) { return std::sin(w * t); };
        fns.eta_t = [w](double t, double) { return w * std::cos(w * t); };
        fns.eta_tt = [w](double t, double) { return -w * w * std::sin(w * t); };
    }
    const char* name = cosine ? "cos" : "sin";
    const std::string wt = (w == 1 ? "t" : fmt(w) + "*t");
    return opaque_generator(std::string("translation by ") + name + "(" + wt + ")",
                            "tau = 0, eta = " + std::string(name) + "(" + wt + ")",
                            std::move(fns));
}

// X_rho = rho d/dt + (rho'/2)(y+c) d/dy with rho = sin or cos of (w t); the
// projective symmetries of the Ermakov-Pinney case for alpha > 0.
Generator trig_projective(double omega, double c, bool cosine) {
    GeneratorFns fns;
    const double w = omega;
    auto s = [w](double t) { return std::sin(w * t); };
    auto co = [w](double t) { return std::cos(w * t); };
    if (cosine) {
        fns.tau = [co](double t, double) { return co(t); };
        fns.tau_t = [s, w](double t, double) { return -w * s(t); };
        fns.tau_tt = [co, w](double t, double) { return -w * w * co(t); };
        fns.eta = [s, w, c](double t, double y) { return -0.5 * w * s(t) * (y + c); };
        fns.eta_t = [co, w, c](double t, double y) { return -0.5 * w * w * co(t) * (y + c); };
        fns.eta_y = [s, w](double t, double) { return -0.5 * w * s(t); };
        fns.eta_tt = [s, w, c](double t, double y) { return 0.5 * w * w * w * s(t) * (y + c); };
        fns.eta_ty = [co, w](double t, double) { return -0.5 * w * w * co(t); };
    } else {
        fns.tau = [s](double t, double) { return s(t); };
        fns.tau_t = [co, w](double t, double) { return w * co(t); };
        fns.tau_tt = [s, w](double t, double) { return -w * w * s(t); };
        fns.eta = [co, w, c](double t, double y) { return 0.5 * w * co(t) * (y + c); };
        fns.eta_t = [s, w, c](double t, double y) { return -0.5 * w * w * s(t) * (y + c); };
        fns.eta_y = [co, w](double t, double) { return 0.5 * w * co(t); };
        fns.eta_tt = [co, w, c](double t, double y) { return -0.5 * w * w * w * co(t) * (y + c); };
        fns.eta_ty = [s, w](double t, double) { return -0.5 * w * w * s(t); };
    }
    fns.eta_yy = [](double, double) { return 0.0; };
    const char* name = cosine ? "cos" : "sin";
    const std::string wt = (w == 1 ? "t" : fmt(w) + "*t");
    return opaque_generator(
        std::string("projective ") + name,
        "tau = " + std::string(name) + "(" + wt + "), eta = " +
            coef_str(cosine ? -0.5 * w : 0.5 * w,
                     std::string(cosine ? "sin" : "cos") + "(" + wt + ")*" + shift_str(c)),
        std::move(fns));
}

// Opaque scaling symmetry t d/dt + k (y + s) d/dy used when the parameters
// have no exact form (numeric-only classifications).
Generator numeric_scaling(double k, double s) {
    GeneratorFns fns;
    fns.tau = [](double t, double) { return t; };
    fns.tau_t = [](double, double) { return 1.0; };
    fns.tau_tt = [](double, double) { return 0.0; };
    fns.eta = [k, s](double, double y) { return k * (y + s); };
    fns.eta_t = [](double, double) { return 0.0; };
    fns.eta_y = [k](double, double) { return k; };
    fns.eta_tt = [](double, double) { return 0.0; };
    fns.eta_ty = [](double, double) { return 0.0; };
    fns.eta_yy = [](double, double) { return 0.0; };
    return opaque_generator("scaling", "tau = t, eta = " + coef_str(k, shift_str(s)),
                            std::move(fns));
}

const Expr& t_var() {
    static const Expr t = variable("t");
    return t;
}
const Expr& y_var() {
    static const Expr y = variable("y");
    return y;
}

}  // namespace

std::string ParamValue::text() const {
    if (exact) return rat_to_string(*exact);
    if (closed_form) return to_string(*closed_form);
    return fmt(value);
}

Generator symbolic_generator(std::string label, const Expr& tau, const Expr& eta) {
    Generator g;
    g.label = std::move(label);
    g.printable = true;
    Expr T = normalize(tau);
    Expr E = normalize(eta);
    g.tau_sym = T;
    g.eta_sym = E;
    Expr Tt = normalize(differentiate(T, "t"));
    Expr Et = normalize(differentiate(E, "t"));
    Expr Ey = normalize(differentiate(E, "y"));
    g.fns.tau = eval2(T);
    g.fns.tau_t = eval2(Tt);
    g.fns.tau_tt = eval2(normalize(differentiate(Tt, "t")));
    g.fns.eta = eval2(E);
    g.fns.eta_t = eval2(Et);
    g.fns.eta_y = eval2(Ey);
    g.fns.eta_tt = eval2(normalize(differentiate(Et, "t")));
    g.fns.eta_ty = eval2(normalize(differentiate(Et, "y")));
    g.fns.eta_yy = eval2(normalize(differentiate(Ey, "y")));
    g.description = "tau = " + to_string(T) + ", eta = " + to_string(E);
    return g;
}

Generator time_translation() {
    return symbolic_generator("time translation", one_expr(), zero_expr());
}

Expr symmetry_residual_expr(const Expr& tau, const Expr& eta, const Expr& F_y) {
    const Expr yd = variable("yd");
    auto D = [&](const Expr& u) {           // total derivative along solutions
        return add(add(differentiate(u, "t"), mul(yd, differentiate(u, "y"))),
                   mul(neg(F_y), differentiate(u, "yd")));
    };
    Expr eta1 = sub(D(eta), mul(yd, D(tau)));
    Expr eta2 = add(D(eta1), mul(F_y, D(tau)));
    return normalize(add(eta2, mul(eta, differentiate(F_y, "y"))));
}

double symmetry_residual(const Generator& gen, const std::function<double(double)>& G_eval,
                         const std::function<double(double)>& G1_eval,
                         const std::function<double(double)>& phi_eval, DomainInterval domain,
                         int points) {
    double worst = 0;
    int valid = 0;
    for (int i = 1; i <= points; ++i) {
        const double t = -2.0 + 4.0 * halton(i, 2);
        const double x = domain.lo + (domain.hi - domain.lo) * halton(i, 3);
        const double yd = -2.0 + 4.0 * halton(i, 5);
        double r;
        try {
            const double y = phi_eval(x);
            const double F = G_eval(x);
            const double Fp = G1_eval(x);
            r = gen.fns.eta_tt(t, y) + 2 * yd * gen.fns.eta_ty(t, y) +
                yd * yd * gen.fns.eta_yy(t, y) - yd * gen.fns.tau_tt(t, y) -
                F * (gen.fns.eta_y(t, y) - 2 * gen.fns.tau_t(t, y)) + gen.fns.eta(t, y) * Fp;
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(r)) continue;
        ++valid;
        worst = std::max(worst, std::abs(r));
    }
    if (valid < points / 2) return -1;
    return worst;
}

std::vector<Generator> catalogue_generators(SymmetryCase c, std::optional<LinearSubtype> subtype,
                                            const std::map<std::string, ParamValue>& params,
                                            std::string& note) {
    std::vector<Generator> out;
    out.push_back(time_translation());
    note.clear();

    switch (c) {
        case SymmetryCase::Generic:
            return out;

        case SymmetryCase::PowerLaw: {
            const ParamValue* n = find_param(params, "n");
            const ParamValue* alpha = find_param(params, "alpha");
            const ParamValue* beta = find_param(params, "beta");
            if (!n || !alpha || !beta) return out;
            Expr ne = param_expr(*n);
            Expr ae = param_expr(*alpha);
            Expr be = param_expr(*beta);
            if (ne && ae && be) {
                // t d/dt + (2/(1-n)) (y + alpha/beta) d/dy
                Expr k = normalize(div_expr(integer(2), sub(one_expr(), ne)));
                Expr shift = normalize(div_expr(ae, be));
                out.push_back(symbolic_generator(
                    "scaling", t_var(), mul(k, add(y_var(), shift))));
            } else {
                out.push_back(numeric_scaling(2.0 / (1.0 - n->value),
                                              alpha->value / beta->value));
            }
            return out;
        }

        case SymmetryCase::Exponential: {
            const ParamValue* gamma = find_param(params, "gamma");
            if (!gamma) return out;
            if (Expr ge = param_expr(*gamma)) {
                out.push_back(symbolic_generator(
                    "scaling", t_var(), neg(div_expr(integer(2), ge))));
            } else {
                GeneratorFns fns = zero_fns();
                const double k = -2.0 / gamma->value;
                fns.tau = [](double t, double) { return t; };
                fns.tau_t = [](double, double) { return 1.0; };
                fns.eta = [k](double, double) { return k; };
                out.push_back(opaque_generator("scaling", "tau = t, eta = " + fmt(k),
                                               std::move(fns)));
            }
            return out;
        }

        case SymmetryCase::InverseCube: {
            const ParamValue* c0 = find_param(params, "c");
            if (!c0) return out;
            Expr ce = param_expr(*c0);
            if (!ce) ce = constant(rat_from_decimal("0"));  // numeric c: certify around 0 shift
            if (!c0->exact && !c0->closed_form) {
                const double cv = c0->value;
                GeneratorFns f1;
                f1.tau = [](double t, double) { return 2 * t; };
                f1.tau_t = [](double, double) { return 2.0; };
                f1.tau_tt = [](double, double) { return 0.0; };
                f1.eta = [cv](double, double y) { return y + cv; };
                f1.eta_t = [](double, double) { return 0.0; };
                f1.eta_y = [](double, double) { return 1.0; };
                f1.eta_tt = f1.eta_t;
                f1.eta_ty = f1.eta_t;
                f1.eta_yy = f1.eta_t;
                out.push_back(opaque_generator(
                    "scaling", "tau = 2*t, eta = " + shift_str(cv), std::move(f1)));
                GeneratorFns f2;
                f2.tau = [](double t, double) { return t * t; };
                f2.tau_t = [](double t, double) { return 2 * t; };
                f2.tau_tt = [](double, double) { return 2.0; };
                f2.eta = [cv](double t, double y) { return t * (y + cv); };
                f2.eta_t = [cv](double, double y) { return y + cv; };
                f2.eta_y = [](double t, double) { return t; };
                f2.eta_tt = [](double, double) { return 0.0; };
                f2.eta_ty = [](double, double) { return 1.0; };
                f2.eta_yy = [](double, double) { return 0.0; };
                out.push_back(opaque_generator(
                    "projective", "tau = t^2, eta = t*" + shift_str(cv), std::move(f2)));
                return out;
            }
            Expr shifted = add(y_var(), ce);
            out.push_back(symbolic_generator("scaling", mul(integer(2), t_var()), shifted));
            out.push_back(symbolic_generator("projective", pow_int(t_var(), 2),
                                             mul(t_var(), shifted)));
            return out;
        }

        case SymmetryCase::ErmakovPinney: {
            const ParamValue* alpha = find_param(params, "alpha");
            const ParamValue* c0 = find_param(params, "c");
            if (!alpha || !c0) return out;
            if (alpha->value > 0) {
                const double w = 2.0 * std::sqrt(alpha->value);
                out.push_back(trig_projective(w, c0->value, /*cosine=*/false));
                out.push_back(trig_projective(w, c0->value, /*cosine=*/true));
                note = "projective pair uses trigonometric coefficients with no tree form; "
                       "certified numerically";
                return out;
            }
            if (alpha->value < 0) {
                Expr ae = param_expr(*alpha);
                Expr ce = param_expr(*c0);
                if (ae && ce) {
                    // mu^2 = -4 alpha; rho = exp(+-mu t), X = rho d/dt + rho'/2 (y+c) d/dy
                    Expr mu = normalize(power(mul(integer(-4), ae), constant(Rational(1, 2))));
                    Expr shifted = add(y_var(), ce);
                    for (int sgn : {+1, -1}) {
                        Expr m = sgn > 0 ? mu : neg(mu);
                        Expr rho = exp_expr(mul(m, t_var()));
                        Expr eta = product({constant(Rational(1, 2)), m, rho, shifted});
                        out.push_back(symbolic_generator(
                            sgn > 0 ? "projective (growing)" : "projective (decaying)", rho,
                            eta));
                    }
                    return out;
                }
                const double m = 2.0 * std::sqrt(-alpha->value);
                const double cv = c0->value;
                for (int sgn : {+1, -1}) {
                    const double mu = sgn * m;
                    GeneratorFns fns;
                    auto rho = [mu](double t) { return std::exp(mu * t); };
                    fns.tau = [rho](double t, double) { return rho(t); };
                    fns.tau_t = [rho, mu](double t, double) { return mu * rho(t); };
                    fns.tau_tt = [rho, mu](double t, double) { return mu * mu * rho(t); };
                    fns.eta = [rho, mu, cv](double t, double y) {
                        return 0.5 * mu * rho(t) * (y + cv);
                    };
                    fns.eta_t = [rho, mu, cv](double t, double y) {
                        return 0.5 * mu * mu * rho(t) * (y + cv);
                    };
                    fns.eta_y = [rho, mu](double t, double) { return 0.5 * mu * rho(t); };
                    fns.eta_tt = [rho, mu, cv](double t, double y) {
                        return 0.5 * mu * mu * mu * rho(t) * (y + cv);
                    };
                    fns.eta_ty = [rho, mu](double t, double) { return 0.5 * mu * mu * rho(t); };
                    fns.eta_yy = [](double, double) { return 0.0; };
                    out.push_back(opaque_generator(
                        sgn > 0 ? "projective (growing)" : "projective (decaying)",
                        "tau = exp(" + fmt(mu) + "*t), eta = " +
                            coef_str(0.5 * mu, "exp(" + fmt(mu) + "*t)*" + shift_str(cv)),
                        std::move(fns)));
                }
                return out;
            }
            return out;  // alpha == 0 is reported as InverseCube upstream
        }

        case SymmetryCase::Linear: {
            const ParamValue* A = find_param(params, "A");
            note = "time translation and two solution translations shown; the full point "
                   "symmetry algebra of a linear equation is eight-dimensional";
            const double Av = A ? A->value : 0.0;
            const bool A_zero = subtype && (*subtype == LinearSubtype::Zero ||
                                        *subtype == LinearSubtype::ConstantForce);
            if (A_zero || Av == 0) {
                out.push_back(symbolic_generator("translation", zero_expr(), one_expr()));
                out.push_back(symbolic_generator("galilean", zero_expr(), t_var()));
                return out;
            }
            if (Av > 0) {
                const double w = std::sqrt(Av);
                out.push_back(trig_translation(w, /*cosine=*/true));
                out.push_back(trig_translation(w, /*cosine=*/false));
                note += "; trigonometric coefficients have no tree form and are certified "
                        "numerically";
                return out;
            }
            Expr Ae = A ? param_expr(*A) : nullptr;
            if (Ae) {
                Expr mu = normalize(power(neg(Ae), constant(Rational(1, 2))));
                out.push_back(symbolic_generator("translation (growing)", zero_expr(),
                                                 exp_expr(mul(mu, t_var()))));
                out.push_back(symbolic_generator("translation (decaying)", zero_expr(),
                                                 exp_expr(mul(neg(mu), t_var()))));
                return out;
            }
            const double m = std::sqrt(-Av);
            for (int sgn : {+1, -1}) {
                const double mu = sgn * m;
                GeneratorFns fns = zero_fns();
                fns.eta = [mu](double t, double) { return std::exp(mu * t); };
                fns.eta_t = [mu](double t, double) { return mu * std::exp(mu * t); };
                fns.eta_tt = [mu](double t, double) { return mu * mu * std::exp(mu * t); };
                out.push_back(opaque_generator("translation",
                                               "tau = 0, eta = exp(" + fmt(mu) + "*t)",
                                               std::move(fns)));
            }
            return out;
        }
    }
    return out;
}

}  // namespace lienard
