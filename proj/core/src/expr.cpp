// Canonical normalization engine.
//
// Rewrite rules applied by `normalize` (each preserves pointwise value on the
// common domain):
//   * sums and products flatten and sort under a total order;
//   * like terms collect: sums merge equal non-constant parts by adding their
//     rational coefficients, products merge equal bases by adding exponents;
//   * exp factors combine (exp(a)*exp(b) -> exp(a+b)), exp of a sum peels off
//     rational multiples of log terms as power factors, exp(log u) -> u;
//   * powers fold exactly over the rationals (integer powers, perfect roots),
//     (e^u)^r -> e^(r*u), nested powers combine when sound, integer powers
//     distribute over products;
//   * sums under a power or inside a product give up their rational content
//     ((2x+2)^k -> 2^k (x+1)^k); a lone sum scaled by a rational distributes;
//   * products of sums expand to collected polynomials when every factor is
//     polynomial and the total degree is small.
// The result is deterministic: equal values built along different routes
// reach the same tree whenever the rules above connect them.

#include "lienard/expr.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace lienard {

namespace {

constexpr long kCanonicalDegreeCap = 12;  // polynomial expansion limit, canonical mode
constexpr long kTermCap = 5000;           // abandon expansions beyond this many terms
constexpr long kFoldExponentCap = 512;    // fold c^k exactly only for |k| <= this

Expr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

Expr make_leaf(Kind k, Rational v, std::string name) {
    ExprNode n;
    n.kind = k;
    n.value = std::move(v);
    n.name = std::move(name);
    return make_node(std::move(n));
}

Expr make_inner(Kind k, std::vector<Expr> kids) {
    ExprNode n;
    n.kind = k;
    n.kids = std::move(kids);
    return make_node(std::move(n));
}

int kind_rank(Kind k) {
    switch (k) {
        case Kind::Constant: return 0;
        case Kind::NamedConstant: return 1;
        case Kind::Variable: return 2;
        case Kind::Exp: return 3;
        case Kind::Log: return 4;
        case Kind::Power: return 5;
        case Kind::Product: return 6;
        case Kind::Sum: return 7;
    }
    return 8;
}

bool is_one(const Expr& e) { return e->kind == Kind::Constant && e->value == 1; }
bool is_zero(const Expr& e) { return e->kind == Kind::Constant && e->value == 0; }

bool is_integer_constant(const Expr& e) {
    return e->kind == Kind::Constant && rat_is_integer(e->value);
}

// Sum terms order by their symbolic part first so that 8 + 24*x + 8*x^3
// reads in ascending rank rather than by leading coefficient.
bool term_less(const Expr& a, const Expr& b) {
    auto [ca, ra] = split_coefficient(a);
    auto [cb, rb] = split_coefficient(b);
    const int c = compare(ra, rb);
    if (c != 0) return c < 0;
    if (ca == cb) return false;
    return ca < cb;
}

}  // namespace

Expr constant(Rational v) { return make_leaf(Kind::Constant, std::move(v), {}); }
Expr integer(long v) { return constant(Rational(v)); }
Expr variable(std::string name) { return make_leaf(Kind::Variable, {}, std::move(name)); }
Expr named_constant(std::string name) {
    return make_leaf(Kind::NamedConstant, {}, std::move(name));
}

const Expr& zero_expr() {
    static const Expr z = constant(Rational(0));
    return z;
}
const Expr& one_expr() {
    static const Expr o = constant(Rational(1));
    return o;
}

Expr sum(std::vector<Expr> kids) { return make_inner(Kind::Sum, std::move(kids)); }
Expr add(Expr a, Expr b) { return sum({std::move(a), std::move(b)}); }
Expr neg(Expr a) { return product({constant(Rational(-1)), std::move(a)}); }
Expr sub(Expr a, Expr b) { return add(std::move(a), neg(std::move(b))); }
Expr product(std::vector<Expr> kids) { return make_inner(Kind::Product, std::move(kids)); }
Expr mul(Expr a, Expr b) { return product({std::move(a), std::move(b)}); }
Expr div_expr(Expr a, Expr b) {
    return mul(std::move(a), power(std::move(b), constant(Rational(-1))));
}
Expr power(Expr base, Expr exponent) {
    return make_inner(Kind::Power, {std::move(base), std::move(exponent)});
}
Expr pow_int(Expr base, long k) { return power(std::move(base), integer(k)); }
Expr exp_expr(Expr arg) { return make_inner(Kind::Exp, {std::move(arg)}); }
Expr log_expr(Expr arg) { return make_inner(Kind::Log, {std::move(arg)}); }

std::optional<Rational> as_rational(const Expr& e) {
    if (e->kind == Kind::Constant) return e->value;
    return std::nullopt;
}

bool is_constant_value(const Expr& e, const Rational& v) {
    return e->kind == Kind::Constant && e->value == v;
}

bool contains_symbol(const Expr& e, const std::string& name) {
    if (e->kind == Kind::Variable || e->kind == Kind::NamedConstant) return e->name == name;
    for (const Expr& k : e->kids)
        if (contains_symbol(k, name)) return true;
    return false;
}

bool contains_any_symbol(const Expr& e) {
    if (e->kind == Kind::Variable || e->kind == Kind::NamedConstant) return true;
    for (const Expr& k : e->kids)
        if (contains_any_symbol(k)) return true;
    return false;
}

bool contains_kind(const Expr& e, Kind k) {
    if (e->kind == k) return true;
    for (const Expr& c : e->kids)
        if (contains_kind(c, k)) return true;
    return false;
}

int compare(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return 0;
    const int ra = kind_rank(a->kind);
    const int rb = kind_rank(b->kind);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a->kind) {
        case Kind::Constant:
            if (a->value == b->value) return 0;
            return a->value < b->value ? -1 : 1;
        case Kind::Variable:
        case Kind::NamedConstant: {
            const int c = a->name.compare(b->name);
            return c < 0 ? -1 : c > 0 ? 1 : 0;
        }
        default: {
            const std::size_t n = std::min(a->kids.size(), b->kids.size());
            for (std::size_t i = 0; i < n; ++i) {
                const int c = compare(a->kids[i], b->kids[i]);
                if (c != 0) return c;
            }
            if (a->kids.size() == b->kids.size()) return 0;
            return a->kids.size() < b->kids.size() ? -1 : 1;
        }
    }
}

bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

std::pair<Rational, Expr> split_coefficient(const Expr& e) {
    if (e->kind == Kind::Constant) return {e->value, one_expr()};
    if (e->kind == Kind::Product && !e->kids.empty() && e->kids[0]->kind == Kind::Constant) {
        Rational c = e->kids[0]->value;
        if (e->kids.size() == 1) return {std::move(c), one_expr()};
        if (e->kids.size() == 2) return {std::move(c), e->kids[1]};
        std::vector<Expr> rest(e->kids.begin() + 1, e->kids.end());
        return {std::move(c), make_inner(Kind::Product, std::move(rest))};
    }
    return {Rational(1), e};
}

namespace {

Rational rat_gcd(const Rational& a, const Rational& b) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (a == 0) return b < 0 ? Rational(-b) : b;
    if (b == 0) return a < 0 ? Rational(-a) : a;
    Integer na = rat_num(a);
    if (na < 0) na = -na;
    Integer nb = rat_num(b);
    if (nb < 0) nb = -nb;
    return Rational(gcd(na, nb), lcm(rat_den(a), rat_den(b)));
}

struct NormOptions {
    long degree_cap = kCanonicalDegreeCap;
    bool opaque_transcendentals = false;  // treat exp/log atoms as degree-0 in expansions
};

class Normalizer {
  public:
    explicit Normalizer(NormOptions opts) : opts_(opts) {}

    Expr norm(const Expr& e) {
        switch (e->kind) {
            case Kind::Constant:
            case Kind::Variable:
            case Kind::NamedConstant:
                return e;
            case Kind::Exp:
                return norm_exp(norm(e->kids[0]));
            case Kind::Log:
                return norm_log(norm(e->kids[0]));
            case Kind::Power:
                return norm_power(norm(e->kids[0]), norm(e->kids[1]));
            case Kind::Sum: {
                std::vector<Expr> parts;
                parts.reserve(e->kids.size());
                for (const Expr& k : e->kids) parts.push_back(norm(k));
                return rebuild_sum(std::move(parts));
            }
            case Kind::Product: {
                std::vector<Expr> parts;
                parts.reserve(e->kids.size());
                for (const Expr& k : e->kids) parts.push_back(norm(k));
                return rebuild_product(std::move(parts));
            }
        }
        return e;
    }

  private:
    NormOptions opts_;

    // --- sums ------------------------------------------------------------

    // Terms must already be canonical.  Flattens, merges like terms, sorts.
    Expr rebuild_sum(std::vector<Expr> terms) {
        std::map<Expr, Rational, ExprLess> buckets;
        std::vector<Expr> pending = std::move(terms);
        while (!pending.empty()) {
            Expr t = std::move(pending.back());
            pending.pop_back();
            if (t->kind == Kind::Sum) {
                pending.insert(pending.end(), t->kids.begin(), t->kids.end());
                continue;
            }
            auto [c, rest] = split_coefficient(t);
            auto it = buckets.find(rest);
            if (it == buckets.end())
                buckets.emplace(std::move(rest), std::move(c));
            else
                it->second += c;
        }
        std::vector<Expr> out;
        out.reserve(buckets.size());
        for (const auto& [rest, c] : buckets) {
            if (c == 0) continue;
            out.push_back(term_from(c, rest));
        }
        if (out.empty()) return zero_expr();
        std::sort(out.begin(), out.end(), term_less);
        if (out.size() == 1) return out[0];
        return make_inner(Kind::Sum, std::move(out));
    }

    static Expr term_from(const Rational& c, const Expr& rest) {
        if (is_one(rest)) return constant(c);
        if (c == 1) return rest;
        std::vector<Expr> kids;
        kids.push_back(constant(c));
        if (rest->kind == Kind::Product)
            kids.insert(kids.end(), rest->kids.begin(), rest->kids.end());
        else
            kids.push_back(rest);
        return make_inner(Kind::Product, std::move(kids));
    }

    // Distributes a rational scale over a canonical sum without re-entering
    // the product pipeline.
    Expr scale_sum(const Expr& s, const Rational& c) {
        std::vector<Expr> out;
        out.reserve(s->kids.size());
        for (const Expr& t : s->kids) {
            auto [tc, rest] = split_coefficient(t);
            out.push_back(term_from(Rational(tc * c), rest));
        }
        std::sort(out.begin(), out.end(), term_less);
        if (out.size() == 1) return out[0];
        return make_inner(Kind::Sum, std::move(out));
    }

    // Rational content of a canonical sum.  In signed mode the sign of the
    // first (sorted) term transfers to the content so the primitive part has
    // a positive leading coefficient; unsigned mode keeps the content
    // positive, which is required under fractional powers.
    std::pair<Rational, Expr> sum_content(const Expr& s, bool signed_mode) {
        Rational content(0);
        for (const Expr& t : s->kids) content = rat_gcd(content, split_coefficient(t).first);
        if (content == 0) return {Rational(1), s};
        if (signed_mode && split_coefficient(s->kids[0]).first < 0) content = -content;
        if (content == 1) return {Rational(1), s};
        return {content, scale_sum(s, Rational(1) / content)};
    }

    // --- powers ------------------------------------------------------------

    Expr norm_power(const Expr& b, const Expr& e) {
        if (e->kind == Kind::Constant) {
            if (e->value == 0) return one_expr();
            if (e->value == 1) return b;
        }
        switch (b->kind) {
            case Kind::Constant: {
                const Rational& c = b->value;
                if (c == 1) return one_expr();
                if (c == 0) {
                    if (e->kind == Kind::Constant && e->value > 0) return zero_expr();
                    break;  // 0^negative / 0^symbolic stays; evaluation rejects it
                }
                if (e->kind == Kind::Constant) {
                    const Rational& ev = e->value;
                    if (rat_is_integer(ev)) {
                        auto k = rat_to_long(ev);
                        if (k && std::abs(*k) <= kFoldExponentCap)
                            return constant(rat_pow_int(c, *k));
                        break;
                    }
                    if (auto folded = rat_pow_rat(c, ev)) return constant(*folded);
                }
                break;
            }
            case Kind::Exp:
                return norm_exp(rebuild_product({e, b->kids[0]}));
            case Kind::Power: {
                const Expr& inner_base = b->kids[0];
                const Expr& inner_exp = b->kids[1];
                const bool sound = is_integer_constant(e) ||
                                   (inner_base->kind == Kind::Constant && inner_base->value > 0);
                if (sound) return norm_power(inner_base, rebuild_product({inner_exp, e}));
                break;
            }
            case Kind::Product: {
                if (is_integer_constant(e)) {
                    std::vector<Expr> fs;
                    fs.reserve(b->kids.size());
                    for (const Expr& k : b->kids) fs.push_back(norm_power(k, e));
                    return rebuild_product(std::move(fs));
                }
                break;
            }
            case Kind::Sum: {
                if (e->kind != Kind::Constant) break;
                const bool int_exp = rat_is_integer(e->value);
                if (int_exp && e->value > 1) {
                    auto k = rat_to_long(e->value);
                    if (k) {
                        if (auto expanded = try_expand({}, {{b, *k}}, Rational(1)))
                            return *expanded;
                    }
                }
                auto [c, prim] = sum_content(b, int_exp);
                if (c != 1) {
                    Expr cf = norm_power(constant(c), e);
                    Expr pf = norm_power(prim, e);
                    return rebuild_product({std::move(cf), std::move(pf)});
                }
                break;
            }
            default:
                break;
        }
        return make_inner(Kind::Power, {b, e});
    }

    // --- exp / log ---------------------------------------------------------

    Expr norm_exp(const Expr& u) {
        if (is_zero(u)) return one_expr();
        if (u->kind == Kind::Log) return u->kids[0];
        std::vector<Expr> terms;
        if (u->kind == Kind::Sum)
            terms = u->kids;
        else
            terms.push_back(u);
        std::vector<Expr> factors;
        std::vector<Expr> residual;
        for (const Expr& t : terms) {
            if (t->kind == Kind::Log) {
                factors.push_back(t->kids[0]);
                continue;
            }
            if (t->kind == Kind::Product && t->kids.size() == 2 &&
                t->kids[0]->kind == Kind::Constant && t->kids[1]->kind == Kind::Log) {
                factors.push_back(norm_power(t->kids[1]->kids[0], t->kids[0]));
                continue;
            }
            residual.push_back(t);
        }
        if (factors.empty()) return make_inner(Kind::Exp, {u});
        if (!residual.empty())
            factors.push_back(make_inner(Kind::Exp, {rebuild_sum(std::move(residual))}));
        return rebuild_product(std::move(factors));
    }

    Expr norm_log(const Expr& u) {
        if (is_one(u)) return zero_expr();
        if (u->kind == Kind::Exp) return u->kids[0];
        return make_inner(Kind::Log, {u});
    }

    // --- products ----------------------------------------------------------

    // Factors must already be canonical.
    Expr rebuild_product(std::vector<Expr> factors) {
        Rational coeff(1);
        std::map<Expr, std::vector<Expr>, ExprLess> bases;  // base -> exponent terms
        std::vector<Expr> exp_args;
        Expr exp_done;  // fully merged exp factor, no extractable logs left
        std::vector<Expr> pending = std::move(factors);

        auto add_base = [&](const Expr& base, const Expr& exponent) {
            bases[base].push_back(exponent);
        };

        for (int round = 0; round < 16; ++round) {
            while (!pending.empty()) {
                Expr f = std::move(pending.back());
                pending.pop_back();
                switch (f->kind) {
                    case Kind::Product:
                        pending.insert(pending.end(), f->kids.begin(), f->kids.end());
                        break;
                    case Kind::Constant:
                        coeff *= f->value;
                        break;
                    case Kind::Exp:
                        exp_args.push_back(f->kids[0]);
                        break;
                    case Kind::Power:
                        if (f->kids[0]->kind == Kind::Exp)  // defensive; canonical powers have no exp base
                            exp_args.push_back(rebuild_product({f->kids[1], f->kids[0]->kids[0]}));
                        else
                            add_base(f->kids[0], f->kids[1]);
                        break;
                    case Kind::Sum: {
                        auto [c, prim] = sum_content(f, /*signed_mode=*/true);
                        coeff *= c;
                        add_base(prim, one_expr());
                        break;
                    }
                    default:
                        add_base(f, one_expr());
                        break;
                }
            }
            if (exp_args.empty()) break;
            if (exp_done) {
                exp_args.push_back(exp_done->kids[0]);
                exp_done.reset();
            }
            Expr merged = norm_exp(exp_args.size() == 1 ? exp_args[0]
                                                        : rebuild_sum(std::move(exp_args)));
            exp_args.clear();
            if (is_one(merged)) continue;
            if (merged->kind == Kind::Exp)
                exp_done = std::move(merged);
            else
                pending.push_back(std::move(merged));
            if (pending.empty()) break;
        }
        // Unreachable in practice (log extraction converges in a few rounds);
        // keep any leftovers value-correct rather than dropping them.
        for (const Expr& a : exp_args) add_base(make_inner(Kind::Exp, {a}), one_expr());
        for (const Expr& f : pending) {
            if (f->kind == Kind::Constant)
                coeff *= f->value;
            else
                add_base(f, one_expr());
        }
        if (coeff == 0) return zero_expr();

        std::vector<Expr> out;
        if (exp_done) out.push_back(exp_done);
        for (const auto& [base, exps] : bases) {
            Expr total = exps.size() == 1 ? exps[0] : rebuild_sum(std::vector<Expr>(exps));
            Expr r = norm_power(base, total);
            if (r->kind == Kind::Constant) {
                coeff *= r->value;
                if (coeff == 0) return zero_expr();
                continue;
            }
            if (r->kind == Kind::Product) {  // defensive; see norm_power cases
                auto [c, rest] = split_coefficient(r);
                coeff *= c;
                if (rest->kind == Kind::Product)
                    out.insert(out.end(), rest->kids.begin(), rest->kids.end());
                else
                    out.push_back(rest);
                continue;
            }
            out.push_back(std::move(r));
        }

        merge_constant_base_roots(out, coeff);

        if (auto expanded = try_expand_factors(out, coeff)) return *expanded;

        std::sort(out.begin(), out.end(), ExprLess{});
        if (out.empty()) return constant(coeff);
        if (coeff == 1) {
            if (out.size() == 1) return out[0];
            return make_inner(Kind::Product, std::move(out));
        }
        if (out.size() == 1 && out[0]->kind == Kind::Sum) return scale_sum(out[0], coeff);
        std::vector<Expr> kids;
        kids.reserve(out.size() + 1);
        kids.push_back(constant(coeff));
        kids.insert(kids.end(), out.begin(), out.end());
        return make_inner(Kind::Product, std::move(kids));
    }

    // 2^(1/2) * 3^(1/2) -> 6^(1/2) for positive constant bases sharing one
    // non-integer rational exponent; refolds perfect powers into the
    // coefficient when the combined base admits an exact root.
    void merge_constant_base_roots(std::vector<Expr>& out, Rational& coeff) {
        std::map<Expr, std::pair<Rational, bool>, ExprLess> groups;  // exponent -> (base product, seen)
        auto mergeable = [](const Expr& f) {
            return f->kind == Kind::Power && f->kids[0]->kind == Kind::Constant &&
                   f->kids[0]->value > 0 && f->kids[1]->kind == Kind::Constant &&
                   !rat_is_integer(f->kids[1]->value);
        };
        bool any_pair = false;
        for (const Expr& f : out) {
            if (!mergeable(f)) continue;
            auto& g = groups[f->kids[1]];
            if (g.second) any_pair = true;
            g.first = g.second ? Rational(g.first * f->kids[0]->value) : f->kids[0]->value;
            g.second = true;
        }
        if (!any_pair) return;
        std::vector<Expr> kept;
        kept.reserve(out.size());
        for (const Expr& f : out)
            if (!mergeable(f)) kept.push_back(f);
        for (const auto& [expnt, g] : groups) {
            Expr folded = norm_power(constant(g.first), expnt);
            if (folded->kind == Kind::Constant)
                coeff *= folded->value;
            else
                kept.push_back(folded);
        }
        out = std::move(kept);
    }

    // --- polynomial expansion ------------------------------------------------

    std::optional<long> poly_degree(const Expr& e) {
        switch (e->kind) {
            case Kind::Constant:
            case Kind::NamedConstant:
                return 0;
            case Kind::Variable:
                return 1;
            case Kind::Sum: {
                long d = 0;
                for (const Expr& k : e->kids) {
                    auto kd = poly_degree(k);
                    if (!kd) return std::nullopt;
                    d = std::max(d, *kd);
                }
                return d;
            }
            case Kind::Product: {
                long d = 0;
                for (const Expr& k : e->kids) {
                    auto kd = poly_degree(k);
                    if (!kd) return std::nullopt;
                    d += *kd;
                }
                return d;
            }
            case Kind::Power: {
                const Expr& ex = e->kids[1];
                if (!is_integer_constant(ex) || ex->value < 0) return std::nullopt;
                auto k = rat_to_long(ex->value);
                if (!k) return std::nullopt;
                auto bd = poly_degree(e->kids[0]);
                if (!bd) return std::nullopt;
                return *k * *bd;
            }
            case Kind::Exp:
            case Kind::Log:
                if (opts_.opaque_transcendentals) return 0;
                return std::nullopt;
        }
        return std::nullopt;
    }

    // Expands scalars * prod(sum_i^k_i) into a collected sum, or declines.
    std::optional<Expr> try_expand(std::vector<Expr> scalars,
                                   std::vector<std::pair<Expr, long>> sum_powers,
                                   Rational coeff) {
        if (opts_.degree_cap <= 0 || sum_powers.empty()) return std::nullopt;
        long degree = 0;
        for (const Expr& s : scalars) {
            auto d = poly_degree(s);
            if (!d) return std::nullopt;
            degree += *d;
        }
        for (const auto& [s, k] : sum_powers) {
            auto d = poly_degree(s);
            if (!d) return std::nullopt;
            degree += *d * k;
        }
        if (degree > opts_.degree_cap) return std::nullopt;

        scalars.push_back(constant(coeff));
        std::vector<Expr> acc{rebuild_product(std::move(scalars))};
        for (const auto& [s, k] : sum_powers) {
            for (long i = 0; i < k; ++i) {
                std::vector<Expr> next;
                next.reserve(acc.size() * s->kids.size());
                for (const Expr& a : acc)
                    for (const Expr& t : s->kids) {
                        next.push_back(rebuild_product({a, t}));
                        if (next.size() > static_cast<std::size_t>(kTermCap)) return std::nullopt;
                    }
                Expr collected = rebuild_sum(std::move(next));
                if (collected->kind == Kind::Sum)
                    acc = collected->kids;
                else
                    acc = {collected};
            }
        }
        return rebuild_sum(std::move(acc));
    }

    std::optional<Expr> try_expand_factors(const std::vector<Expr>& factors,
                                           const Rational& coeff) {
        std::vector<Expr> scalars;
        std::vector<std::pair<Expr, long>> sum_powers;
        for (const Expr& f : factors) {
            if (f->kind == Kind::Sum) {
                sum_powers.emplace_back(f, 1);
            } else if (f->kind == Kind::Power && f->kids[0]->kind == Kind::Sum &&
                       is_integer_constant(f->kids[1]) && f->kids[1]->value > 0) {
                auto k = rat_to_long(f->kids[1]->value);
                if (!k) return std::nullopt;
                sum_powers.emplace_back(f->kids[0], *k);
            } else {
                scalars.push_back(f);
            }
        }
        return try_expand(std::move(scalars), std::move(sum_powers), coeff);
    }
};

}  // namespace

Expr normalize(const Expr& e) { return Normalizer(NormOptions{}).norm(e); }

Expr normalize_with_cap(const Expr& e, long degree_cap) {
    return Normalizer(NormOptions{degree_cap, /*opaque_transcendentals=*/true}).norm(e);
}

// --- printing ---------------------------------------------------------------

namespace {

bool base_needs_parens(const Expr& b) {
    switch (b->kind) {
        case Kind::Variable:
        case Kind::NamedConstant:
        case Kind::Exp:
        case Kind::Log:
            return false;
        case Kind::Constant:
            return b->value < 0 || !rat_is_integer(b->value);
        default:
            return true;
    }
}

void print_expr(std::ostream& os, const Expr& e);

void print_factor(std::ostream& os, const Expr& f) {
    if (f->kind == Kind::Sum) {
        os << '(';
        print_expr(os, f);
        os << ')';
        return;
    }
    if (f->kind == Kind::Power) {
        const Expr& b = f->kids[0];
        const Expr& ex = f->kids[1];
        if (base_needs_parens(b)) {
            os << '(';
            print_expr(os, b);
            os << ')';
        } else {
            print_expr(os, b);
        }
        os << '^';
        if (ex->kind == Kind::Constant && rat_is_integer(ex->value) && ex->value >= 0) {
            os << rat_to_string(ex->value);
        } else {
            os << '(';
            print_expr(os, ex);
            os << ')';
        }
        return;
    }
    print_expr(os, f);
}

// Prints |coeff| * factors; the caller handles the sign.
void print_term_magnitude(std::ostream& os, const Rational& coeff_abs, const Expr& rest) {
    bool need_star = false;
    if (is_one(rest)) {
        os << rat_to_string(coeff_abs);
        return;
    }
    if (coeff_abs != 1) {
        os << rat_to_string(coeff_abs);
        need_star = true;
    }
    std::vector<Expr> factors;
    if (rest->kind == Kind::Product)
        factors = rest->kids;
    else
        factors.push_back(rest);
    for (const Expr& f : factors) {
        if (need_star) os << " * ";
        print_factor(os, f);
        need_star = true;
    }
}

void print_expr(std::ostream& os, const Expr& e) {
    switch (e->kind) {
        case Kind::Constant:
            if (e->value < 0)
                os << '-' << rat_to_string(Rational(-e->value));
            else
                os << rat_to_string(e->value);
            return;
        case Kind::Variable:
        case Kind::NamedConstant:
            os << e->name;
            return;
        case Kind::Exp:
            os << "exp(";
            print_expr(os, e->kids[0]);
            os << ')';
            return;
        case Kind::Log:
            os << "log(";
            print_expr(os, e->kids[0]);
            os << ')';
            return;
        case Kind::Power:
            print_factor(os, e);
            return;
        case Kind::Product: {
            auto [c, rest] = split_coefficient(e);
            if (c < 0) {
                os << '-';
                print_term_magnitude(os, Rational(-c), rest);
            } else {
                print_term_magnitude(os, c, rest);
            }
            return;
        }
        case Kind::Sum: {
            if (e->kids.empty()) {
                os << '0';
                return;
            }
            bool first = true;
            for (const Expr& t : e->kids) {
                auto [c, rest] = split_coefficient(t);
                if (first) {
                    if (c < 0) {
                        os << '-';
                        print_term_magnitude(os, Rational(-c), rest);
                    } else {
                        print_term_magnitude(os, c, rest);
                    }
                    first = false;
                    continue;
                }
                if (c < 0) {
                    os << " - ";
                    print_term_magnitude(os, Rational(-c), rest);
                } else {
                    os << " + ";
                    print_term_magnitude(os, c, rest);
                }
            }
            return;
        }
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print_expr(os, e);
    return os.str();
}

}  // namespace lienard
