#include "lienard/calculus.hpp"

#include <cmath>

namespace lienard {

Expr differentiate(const Expr& e, const std::string& var) {
    switch (e->kind) {
        case Kind::Constant:
        case Kind::NamedConstant:
            return zero_expr();
        case Kind::Variable:
            return e->name == var ? one_expr() : zero_expr();
        case Kind::Sum: {
            std::vector<Expr> parts;
            parts.reserve(e->kids.size());
            for (const Expr& k : e->kids) parts.push_back(differentiate(k, var));
            return sum(std::move(parts));
        }
        case Kind::Product: {
            std::vector<Expr> parts;
            parts.reserve(e->kids.size());
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                std::vector<Expr> factors = e->kids;
                factors[i] = differentiate(e->kids[i], var);
                parts.push_back(product(std::move(factors)));
            }
            return sum(std::move(parts));
        }
        case Kind::Power: {
            const Expr& b = e->kids[0];
            const Expr& ex = e->kids[1];
            if (!contains_symbol(ex, var)) {
                // r * b^(r-1) * b'
                return product({ex, power(b, sub(ex, one_expr())), differentiate(b, var)});
            }
            // b^e * (e' log b + e b'/b)
            Expr inner = add(mul(differentiate(ex, var), log_expr(b)),
                             product({ex, differentiate(b, var), power(b, integer(-1))}));
            return mul(e, std::move(inner));
        }
        case Kind::Exp:
            return mul(differentiate(e->kids[0], var), e);
        case Kind::Log:
            return mul(differentiate(e->kids[0], var), power(e->kids[0], integer(-1)));
    }
    return zero_expr();
}

std::optional<std::pair<Expr, Expr>> affine_parts(const Expr& b, const std::string& var) {
    Expr slope = normalize(differentiate(b, var));
    if (is_constant_value(slope, Rational(0)) || contains_symbol(slope, var)) return std::nullopt;
    Expr offset = normalize(sub(b, mul(slope, variable(var))));
    if (contains_symbol(offset, var)) return std::nullopt;
    return std::make_pair(std::move(offset), std::move(slope));
}

namespace {

// Antiderivative of a single var-dependent canonical factor, or nullopt.
std::optional<Expr> anti_factor(const Expr& f, const std::string& var) {
    if (f->kind == Kind::Variable && f->name == var)
        return mul(constant(Rational(1, 2)), pow_int(variable(var), 2));
    if (f->kind == Kind::Exp) {
        auto aff = affine_parts(f->kids[0], var);
        if (!aff) return std::nullopt;
        return mul(f, power(aff->second, integer(-1)));
    }
    if (f->kind == Kind::Power) {
        const Expr& base = f->kids[0];
        const Expr& ex = f->kids[1];
        if (ex->kind != Kind::Constant) return std::nullopt;  // exponent could equal -1
        auto aff = affine_parts(base, var);
        if (!aff) return std::nullopt;
        const Expr& c = aff->second;
        if (ex->value == -1) return mul(log_expr(base), power(c, integer(-1)));
        Expr r1 = constant(ex->value + 1);
        return mul(power(base, r1), power(mul(c, r1), integer(-1)));
    }
    return std::nullopt;
}

}  // namespace

std::optional<Expr> antiderivative(const Expr& e, const std::string& var) {
    Expr n = normalize(e);
    if (!contains_symbol(n, var)) return mul(n, variable(var));
    if (n->kind == Kind::Sum) {
        std::vector<Expr> parts;
        parts.reserve(n->kids.size());
        for (const Expr& t : n->kids) {
            auto a = antiderivative(t, var);
            if (!a) return std::nullopt;
            parts.push_back(std::move(*a));
        }
        return sum(std::move(parts));
    }
    if (n->kind == Kind::Product) {
        std::vector<Expr> free_factors;
        std::vector<Expr> dependent;
        for (const Expr& k : n->kids) {
            (contains_symbol(k, var) ? dependent : free_factors).push_back(k);
        }
        if (dependent.size() != 1) return std::nullopt;
        auto a = anti_factor(dependent[0], var);
        if (!a) return std::nullopt;
        free_factors.push_back(std::move(*a));
        return product(std::move(free_factors));
    }
    return anti_factor(n, var);
}

Expr substitute(const Expr& e, const std::string& name, const Expr& replacement) {
    if ((e->kind == Kind::Variable || e->kind == Kind::NamedConstant) && e->name == name)
        return replacement;
    if (e->kids.empty()) return e;
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    bool changed = false;
    for (const Expr& k : e->kids) {
        Expr nk = substitute(k, name, replacement);
        changed = changed || nk.get() != k.get();
        kids.push_back(std::move(nk));
    }
    if (!changed) return e;
    ExprNode n;
    n.kind = e->kind;
    n.value = e->value;
    n.name = e->name;
    n.kids = std::move(kids);
    return std::make_shared<const ExprNode>(std::move(n));
}

namespace {

double eval_rec(const Expr& e, const Bindings& b, EvalDetail& d) {
    double r = 0;
    switch (e->kind) {
        case Kind::Constant:
            r = rat_to_double(e->value);
            break;
        case Kind::Variable:
        case Kind::NamedConstant: {
            auto it = b.find(e->name);
            if (it == b.end()) throw UnboundSymbol(e->name);
            r = it->second;
            break;
        }
        case Kind::Sum:
            for (const Expr& k : e->kids) r += eval_rec(k, b, d);
            break;
        case Kind::Product:
            r = 1;
            for (const Expr& k : e->kids) r *= eval_rec(k, b, d);
            break;
        case Kind::Power: {
            const double vb = eval_rec(e->kids[0], b, d);
            const double ve = eval_rec(e->kids[1], b, d);
            if (vb == 0 && ve < 0) throw DomainError("zero raised to a negative power");
            if (vb < 0 && std::floor(ve) != ve)
                throw DomainError("negative base raised to a non-integer power");
            if (ve < 0) d.min_den_mag = std::min(d.min_den_mag, std::abs(vb));
            r = std::pow(vb, ve);
            break;
        }
        case Kind::Exp:
            r = std::exp(eval_rec(e->kids[0], b, d));
            break;
        case Kind::Log: {
            const double va = eval_rec(e->kids[0], b, d);
            if (va <= 0) throw DomainError("log of a nonpositive value");
            d.min_den_mag = std::min(d.min_den_mag, va);
            r = std::log(va);
            break;
        }
    }
    d.max_abs = std::max(d.max_abs, std::abs(r));
    return r;
}

}  // namespace

double eval(const Expr& e, const Bindings& bindings) {
    EvalDetail d;
    return eval_rec(e, bindings, d);
}

EvalDetail eval_detailed(const Expr& e, const Bindings& bindings) {
    EvalDetail d;
    d.value = eval_rec(e, bindings, d);
    return d;
}

namespace {

struct FracBuild {
    Expr num;
    std::map<Expr, long, ExprLess> den;
};

Expr raw_product(std::vector<Expr> fs) {
    if (fs.empty()) return one_expr();
    if (fs.size() == 1) return fs[0];
    return product(std::move(fs));
}

Expr raw_pow(const Expr& e, long k) {
    if (k == 1) return e;
    return power(e, integer(k));
}

void den_add(FracBuild& fb, const Expr& base, long exp) {
    Expr nb = normalize(base);
    if (nb->kind == Kind::Constant) {
        // A rational denominator folds exactly into the numerator.
        if (nb->value == 0) return;  // e is undefined everywhere; keep sound
        fb.num = mul(fb.num, constant(rat_pow_int(Rational(1) / nb->value, exp)));
        return;
    }
    if (nb->kind == Kind::Product) {
        for (const Expr& f : nb->kids) {
            if (f->kind == Kind::Power && f->kids[1]->kind == Kind::Constant &&
                rat_is_integer(f->kids[1]->value)) {
                if (auto k = rat_to_long(f->kids[1]->value); k && *k > 0) {
                    den_add(fb, f->kids[0], exp * *k);
                    continue;
                }
            }
            den_add(fb, f, exp);
        }
        return;
    }
    fb.den[nb] += exp;
}

FracBuild frac_rec(const Expr& e);

FracBuild frac_combine_sum(const std::vector<Expr>& kids) {
    std::vector<FracBuild> parts;
    parts.reserve(kids.size());
    FracBuild out;
    for (const Expr& k : kids) {
        parts.push_back(frac_rec(k));
        for (const auto& [base, exp] : parts.back().den) {
            long& cur = out.den[base];
            cur = std::max(cur, exp);
        }
    }
    std::vector<Expr> terms;
    terms.reserve(parts.size());
    for (const FracBuild& p : parts) {
        std::vector<Expr> fs{p.num};
        for (const auto& [base, exp] : out.den) {
            auto it = p.den.find(base);
            const long have = it == p.den.end() ? 0 : it->second;
            if (exp > have) fs.push_back(raw_pow(base, exp - have));
        }
        terms.push_back(raw_product(std::move(fs)));
    }
    out.num = sum(std::move(terms));
    return out;
}

FracBuild frac_rec(const Expr& e) {
    FracBuild out;
    out.num = e;
    switch (e->kind) {
        case Kind::Sum:
            return frac_combine_sum(e->kids);
        case Kind::Product: {
            FracBuild acc;
            std::vector<Expr> nums;
            for (const Expr& k : e->kids) {
                FracBuild f = frac_rec(k);
                nums.push_back(f.num);
                for (const auto& [base, exp] : f.den) acc.den[base] += exp;
            }
            acc.num = raw_product(std::move(nums));
            // den_add may have folded rationals into child nums already; keep as is
            return acc;
        }
        case Kind::Power: {
            const Expr& base = e->kids[0];
            const Expr& ex = e->kids[1];
            if (ex->kind != Kind::Constant) break;  // opaque
            const Rational& r = ex->value;
            if (rat_is_integer(r)) {
                auto k = rat_to_long(r);
                if (!k || *k == 0) break;
                FracBuild fb = frac_rec(base);
                if (*k > 0) {
                    FracBuild out2;
                    out2.num = raw_pow(fb.num, *k);
                    for (const auto& [b2, e2] : fb.den) out2.den[b2] += e2 * *k;
                    return out2;
                }
                // negative power: denominator of base becomes numerator
                FracBuild out2;
                std::vector<Expr> fs;
                for (const auto& [b2, e2] : fb.den) fs.push_back(raw_pow(b2, e2));
                out2.num = raw_pow(raw_product(std::move(fs)), -*k);
                den_add(out2, fb.num, -*k);
                return out2;
            }
            if (r < 0) {
                // b^(-p/q) == (b^(1/q))^(-p)
                FracBuild out2;
                out2.num = one_expr();
                Expr root = power(base, constant(Rational(1) / rat_den(r)));
                auto p = rat_to_long(Rational(-rat_num(r)));
                if (!p) break;
                den_add(out2, root, *p);
                return out2;
            }
            break;  // positive fractional power: opaque numerator factor
        }
        default:
            break;
    }
    return out;
}

}  // namespace

Fraction to_fraction(const Expr& e) {
    FracBuild fb = frac_rec(e);
    Fraction out;
    out.num = fb.num;
    out.den.assign(fb.den.begin(), fb.den.end());
    return out;
}

}  // namespace lienard
