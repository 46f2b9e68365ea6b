#include "lienard/decide.hpp"

#include <cmath>
#include <functional>
#include <set>

namespace lienard {

namespace {

constexpr long kFractionDegreeCap = 64;

// Conservative structural positivity: true only when e is nonzero everywhere
// it is defined (nonzero rationals, exponentials, powers of nonzero
// constants, and products of such).
// Positive for every real assignment of the variables (sound, incomplete).
bool provably_positive(const Expr& e);

// Nonnegative for every real assignment (sound, incomplete).
bool provably_nonneg(const Expr& e) {
    if (provably_positive(e)) return true;
    if (e->kind == Kind::Constant) return e->value >= 0;
    if (e->kind == Kind::Power) {
        const Expr& r = e->kids[1];
        // Even integer exponents square away the sign of any real base.
        if (r->kind == Kind::Constant && rat_is_integer(r->value) &&
            rat_num(r->value) % 2 == 0)
            return true;
    }
    if (e->kind == Kind::Sum) {
        for (const Expr& k : e->kids)
            if (!provably_nonneg(k)) return false;
        return true;
    }
    return false;
}

bool provably_positive(const Expr& e) {
    switch (e->kind) {
        case Kind::Constant:
            return e->value > 0;
        case Kind::Exp:
            return true;
        case Kind::Power:
            return provably_positive(e->kids[0]);
        case Kind::Product:
            for (const Expr& k : e->kids)
                if (!provably_positive(k)) return false;
            return true;
        case Kind::Sum: {
            bool one_positive = false;
            for (const Expr& k : e->kids) {
                if (provably_positive(k))
                    one_positive = true;
                else if (!provably_nonneg(k))
                    return false;
            }
            return one_positive;
        }
        default:
            return false;
    }
}

// One addend of an exponent argument: rational · v^k with k a positive
// integer (v the single permitted variable).
bool integer_power_addend(const Expr& t, const std::string& var) {
    const Expr* core = &t;
    if (t->kind == Kind::Product) {
        if (t->kids.size() != 2 || t->kids[0]->kind != Kind::Constant) return false;
        core = &t->kids[1];
    }
    if ((*core)->kind == Kind::Variable) return (*core)->name == var;
    if ((*core)->kind == Kind::Power) {
        const Expr& b = (*core)->kids[0];
        const Expr& r = (*core)->kids[1];
        return b->kind == Kind::Variable && b->name == var && r->kind == Kind::Constant &&
               rat_is_integer(r->value) && r->value > 0;
    }
    return false;
}

// Signature of one monomial term: the canonical power part v^r (rational r)
// and the exponential's argument with any constant addend stripped (e^{p+c}
// and e^{p} are proportional, so the constant must not distinguish terms).
// Returns false when the term is not a pure monomial of this shape.
bool monomial_signature(const Expr& term, const std::string& var, std::string& sig) {
    std::string powers, exp_core;
    auto take_factor = [&](const Expr& k) -> bool {
        switch (k->kind) {
            case Kind::Constant:
                return true;
            case Kind::Variable:
                if (k->name != var) return false;
                powers += "|" + to_string(k);
                return true;
            case Kind::Power: {
                const Expr& b = k->kids[0];
                if (b->kind != Kind::Variable || b->name != var) return false;
                if (k->kids[1]->kind != Kind::Constant) return false;
                powers += "|" + to_string(k);
                return true;
            }
            case Kind::Exp: {
                if (!exp_core.empty()) return false;
                const Expr& arg = k->kids[0];
                std::vector<Expr> addends;
                if (arg->kind == Kind::Sum)
                    addends = arg->kids;
                else
                    addends = {arg};
                std::vector<Expr> kept;
                for (const Expr& a : addends) {
                    if (a->kind == Kind::Constant) continue;  // strip e^{c} factor
                    if (!integer_power_addend(a, var)) return false;
                    kept.push_back(a);
                }
                if (kept.empty()) return false;  // pure constant: belongs to the coefficient
                exp_core = "e";
                for (const Expr& a : kept) exp_core += "|" + to_string(a);
                return true;
            }
            default:
                return false;
        }
    };
    if (term->kind == Kind::Product) {
        for (const Expr& k : term->kids)
            if (!take_factor(k)) return false;
    } else if (!take_factor(term)) {
        return false;
    }
    sig = powers + "#" + exp_core;
    return true;
}

// Linear independence of exponential-polynomial monomials: a canonical sum
// whose terms are all rational · v^r · e^{p(v)} (one variable, rational
// constants, p with positive-integer powers) vanishes on an interval only if
// every coefficient is zero.  Canonical sums drop zero coefficients, so
// pairwise-distinct signatures prove the sum is not identically zero; both
// sides are analytic, so vanishing on any interval is ruled out too.
bool single_variable_of(const Expr& e, std::string& var) {
    switch (e->kind) {
        case Kind::Variable:
            if (var.empty()) var = e->name;
            return e->name == var;
        case Kind::NamedConstant:
            return false;  // opaque coefficients defeat the independence argument
        default:
            for (const Expr& k : e->kids)
                if (!single_variable_of(k, var)) return false;
            return true;
    }
}

bool independent_monomials(const Expr& e) {
    if (e->kind != Kind::Sum || e->kids.size() < 2) return false;
    std::string var;
    for (const Expr& k : e->kids)
        if (!single_variable_of(k, var)) return false;
    if (var.empty()) return false;
    std::set<std::string> seen;
    for (const Expr& k : e->kids) {
        std::string sig;
        if (!monomial_signature(k, var, sig)) return false;
        if (!seen.insert(sig).second) return false;  // aliased terms: no conclusion
    }
    return true;
}

bool provably_nonzero(const Expr& e) {
    switch (e->kind) {
        case Kind::Constant:
            return e->value != 0;
        case Kind::Exp:
            return true;
        case Kind::Power: {
            const Expr& b = e->kids[0];
            if (b->kind == Kind::Constant && b->value > 0) return true;
            if (b->kind == Kind::Constant && b->value != 0 &&
                e->kids[1]->kind == Kind::Constant && rat_is_integer(e->kids[1]->value))
                return true;
            return provably_positive(e);
        }
        case Kind::Product:
            for (const Expr& k : e->kids)
                if (!provably_nonzero(k)) return false;
            return true;
        case Kind::Sum: {
            // A sum of one-signed terms with at least one strict term.
            if (provably_positive(e)) return true;
            bool one_negative = false;
            bool mixed = false;
            for (const Expr& k : e->kids) {
                Expr m = normalize(neg(k));
                if (provably_positive(m)) {
                    one_negative = true;
                } else if (!provably_nonneg(m)) {
                    mixed = true;
                    break;
                }
            }
            if (!mixed && one_negative) return true;
            return independent_monomials(e);
        }
        default:
            return false;
    }
}

Decision sample_zero(const Expr& n, const SamplingConfig& cfg) {
    Decision d;
    d.grade = Grade::Numeric;
    int valid = 0;
    double worst = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        const double x = cfg.lo + halton(i + 1, 2) * (cfg.hi - cfg.lo);
        EvalDetail detail;
        try {
            detail = eval_detailed(n, {{cfg.var, x}});
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(detail.value) || !std::isfinite(detail.max_abs)) continue;
        if (detail.min_den_mag < cfg.min_denominator) continue;
        ++valid;
        worst = std::max(worst, std::abs(detail.value) / (1.0 + detail.max_abs));
    }
    d.witness = worst;
    if (valid < cfg.samples / 2) {
        d.state = TriState::Unknown;
        return d;
    }
    d.state = worst >= cfg.tol ? TriState::No : TriState::Yes;
    return d;
}

}  // namespace

double halton(int index, int base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

namespace {

// Exact nonzero witness: substituting a rational point and folding to a
// nonzero rational constant — or to a variable-free tree that is nonzero by
// structure (e.g. a positive power or an exponential) — disproves the
// identity in exact arithmetic.
bool rational_point_nonzero(const Expr& n, const SamplingConfig& cfg, double& witness) {
    static const Rational probes[] = {Rational(1),    Rational(2), Rational(3, 2),
                                      Rational(5, 4), Rational(3), Rational(1, 2)};
    for (const Rational& p : probes) {
        Expr r = normalize(substitute(n, cfg.var, constant(p)));
        if (r->kind == Kind::Constant && r->value != 0) {
            witness = std::abs(rat_to_double(r->value));
            return true;
        }
        if (r->kind != Kind::Constant && !contains_symbol(r, cfg.var) && provably_nonzero(r)) {
            try {
                witness = std::abs(eval(r, {}));
            } catch (const Error&) {
                witness = 0;
            }
            return true;
        }
    }
    return false;
}

// Exponential abstraction: when every exponential in the tree has the form
// exp(r_i * var) with rational r_i, the expression is a rational function of
// the pair (var, E) with E = exp(rho * var) and rho = gcd of the rates (each
// exponential becomes an integer power of E).  The functions x^j * e^(k rho x)
// are linearly independent, so an identity that holds along the curve
// (x, e^(rho x)) holds for the two-variable rational function as well; exact
// rational probes of var and E independently are therefore sound witnesses.
// Returns the rewritten tree or nullopt when the shape does not apply.
std::optional<Expr> abstract_exponentials(const Expr& e, const std::string& var,
                                          const std::string& evar) {
    // Rate of an exponential argument that is a pure rational multiple of var.
    auto rate_of = [&](const Expr& arg) -> std::optional<Rational> {
        if (arg->kind == Kind::Variable) return arg->name == var ? std::optional<Rational>(Rational(1)) : std::nullopt;
        if (arg->kind == Kind::Product && arg->kids.size() == 2 &&
            arg->kids[0]->kind == Kind::Constant && arg->kids[1]->kind == Kind::Variable &&
            arg->kids[1]->name == var)
            return arg->kids[0]->value;
        return std::nullopt;
    };

    std::vector<Rational> rates;
    bool eligible = true;
    std::function<void(const Expr&)> scan = [&](const Expr& n) {
        if (!eligible) return;
        if (n->kind == Kind::Exp) {
            auto r = rate_of(n->kids[0]);
            if (!r || *r == 0) {
                eligible = false;
                return;
            }
            rates.push_back(*r);
            return;  // the argument is consumed whole
        }
        for (const Expr& k : n->kids) scan(k);
    };
    scan(e);
    if (!eligible || rates.empty() || contains_symbol(e, evar)) return std::nullopt;

    // gcd of rationals: gcd of numerators over lcm of denominators.
    Integer gn = 0, gl = 1;
    for (const Rational& r : rates) {
        gn = boost::multiprecision::gcd(gn, boost::multiprecision::abs(rat_num(r)));
        gl = boost::multiprecision::lcm(gl, rat_den(r));
    }
    const Rational rho(gn, gl);

    std::function<Expr(const Expr&)> rebuild = [&](const Expr& n) -> Expr {
        switch (n->kind) {
            case Kind::Exp: {
                auto r = rate_of(n->kids[0]);
                auto k = rat_to_long(Rational(*r / rho));
                if (!k) throw Error("exponential rate not commensurable");
                return pow_int(variable(evar), *k);
            }
            case Kind::Constant:
            case Kind::NamedConstant:
            case Kind::Variable:
                return n;
            case Kind::Log:
                return log_expr(rebuild(n->kids[0]));
            case Kind::Power:
                return power(rebuild(n->kids[0]), rebuild(n->kids[1]));
            case Kind::Product:
            case Kind::Sum: {
                std::vector<Expr> kids;
                kids.reserve(n->kids.size());
                for (const Expr& k : n->kids) kids.push_back(rebuild(k));
                return n->kind == Kind::Product ? product(std::move(kids)) : sum(std::move(kids));
            }
        }
        return n;
    };
    try {
        return normalize(rebuild(e));
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

Decision decide_zero(const Expr& e, const SamplingConfig& cfg) {
    Expr n = normalize(e);
    if (n->kind == Kind::Constant)
        return {n->value == 0 ? TriState::Yes : TriState::No, Grade::Symbolic, 0};
    if (provably_nonzero(n)) return {TriState::No, Grade::Symbolic, 0};

    // Common-denominator route: n vanishes iff its numerator does, and the
    // numerator is amenable to full polynomial collapse.
    Fraction fr = to_fraction(n);
    Expr z = normalize_with_cap(fr.num, kFractionDegreeCap);
    if (z->kind == Kind::Constant && z->value == 0)
        return {TriState::Yes, Grade::Symbolic, 0};
    if (provably_nonzero(z)) return {TriState::No, Grade::Symbolic, 0};

    double witness = 0;
    if (!contains_symbol(n, cfg.var)) {
        // Variable-free but not folded (mixed radicals / exp atoms).
        return sample_zero(n, cfg);
    }
    if (rational_point_nonzero(n, cfg, witness))
        return {TriState::No, Grade::Symbolic, witness};

    return sample_zero(n, cfg);
}

Decision decide_constant(const Expr& e, const SamplingConfig& cfg) {
    return decide_zero(differentiate(normalize(e), cfg.var), cfg);
}

ValueReading read_value(const Expr& e, const SamplingConfig& cfg) {
    ValueReading out;
    Expr n = normalize(e);
    auto finish_free = [&](const Expr& free) -> ValueReading {
        ValueReading r;
        if (free->kind == Kind::Constant) {
            r.exact = free->value;
            r.approx = rat_to_double(free->value);
            return r;
        }
        r.closed_form = free;
        try {
            r.approx = eval(free, {});
        } catch (const Error&) {
            r.approx = std::numeric_limits<double>::quiet_NaN();
        }
        return r;
    };
    if (!contains_symbol(n, cfg.var)) return finish_free(n);

    // Exact readout: substitute rational probe points; two agreeing exact
    // results are accepted (a symbolically constant expression cannot agree
    // twice by accident along this route).
    static const Rational probes[] = {Rational(1), Rational(2),      Rational(3, 2),
                                      Rational(5, 4), Rational(7, 4), Rational(3),
                                      Rational(1, 2)};
    std::optional<Rational> first_exact;
    std::optional<Expr> first_closed;
    for (const Rational& p : probes) {
        Expr r = normalize(substitute(n, cfg.var, constant(p)));
        if (contains_symbol(r, cfg.var)) continue;
        if (r->kind == Kind::Constant) {
            if (first_exact && *first_exact == r->value) return finish_free(r);
            first_exact = r->value;
            continue;
        }
        double probe_val;
        try {
            probe_val = eval(r, {});
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(probe_val)) continue;
        if (first_closed && equal(*first_closed, r)) return finish_free(r);
        first_closed = r;
    }

    // Exponentials of rational multiples of the variable block the rational
    // probes above (exp(15/16) never folds).  Abstract them as integer powers
    // of an independent symbol and probe both symbols at rational points; see
    // abstract_exponentials for why this readout is exact and sound.
    static const char* kExpVar = "__exp_base";
    if (auto ab = abstract_exponentials(n, cfg.var, kExpVar)) {
        static const std::pair<Rational, Rational> pair_probes[] = {
            {Rational(1), Rational(1)},     {Rational(2), Rational(2)},
            {Rational(1), Rational(2)},     {Rational(3, 2), Rational(1, 2)},
            {Rational(1, 2), Rational(3)},  {Rational(2), Rational(5, 4)},
            {Rational(3), Rational(1, 3)},  {Rational(5, 4), Rational(4)},
        };
        std::optional<Rational> seen;
        for (const auto& [xv, ev] : pair_probes) {
            Expr r = normalize(substitute(substitute(*ab, cfg.var, constant(xv)), kExpVar,
                                          constant(ev)));
            if (r->kind != Kind::Constant) continue;
            if (seen && *seen == r->value) return finish_free(r);
            seen = r->value;
        }
    }

    // Numeric fallback: mean over valid samples.
    double acc = 0;
    int valid = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        const double x = cfg.lo + halton(i + 1, 2) * (cfg.hi - cfg.lo);
        try {
            EvalDetail d = eval_detailed(n, {{cfg.var, x}});
            if (!std::isfinite(d.value) || d.min_den_mag < cfg.min_denominator) continue;
            acc += d.value;
            ++valid;
        } catch (const Error&) {
        }
    }
    out.approx = valid > 0 ? acc / valid : std::numeric_limits<double>::quiet_NaN();
    return out;
}

const char* to_string(TriState s) {
    switch (s) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        case TriState::Unknown: return "unknown";
    }
    return "unknown";
}

const char* to_string(Grade g) {
    return g == Grade::Symbolic ? "symbolic" : "numeric";
}

}  // namespace lienard
