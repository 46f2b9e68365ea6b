#include "lienard/report.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>

namespace lienard {

namespace {

using nlohmann::json;

std::string sci(double v) {
    if (v < 0) return "n/a";
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

std::string opt_expr_text(const std::optional<Expr>& e) {
    return e ? to_string(*e) : std::string("numeric (quadrature)");
}

json param_json(const ParamValue& p) {
    json j;
    j["text"] = p.text();
    j["value"] = p.value;
    j["exact"] = p.exact.has_value();
    return j;
}

json generator_json(const Generator& gen, const TransformData& T) {
    json j;
    j["label"] = gen.label;
    j["description"] = gen.description;
    j["printable"] = gen.printable;
    if (gen.residual >= 0) j["residual"] = gen.residual;
    if (gen.tau_sym && gen.eta_sym) {
        j["canonical"] = {{"tau", to_string(*gen.tau_sym)}, {"eta", to_string(*gen.eta_sym)}};
        if (auto xi = original_chart_xi(gen, T))
            j["original"] = {{"tau", to_string(*gen.tau_sym)}, {"xi", to_string(*xi)}};
        else
            j["original"] = {{"tau", to_string(*gen.tau_sym)},
                             {"xi", "eta/M with y = phi(x) (numeric)"}};
    } else {
        j["canonical"] = {{"form", gen.description}};
        j["original"] = {{"form", "tau unchanged, xi = eta/M with y = phi(x) (numeric)"}};
    }
    return j;
}

}  // namespace

std::optional<Expr> original_chart_xi(const Generator& gen, const TransformData& T) {
    if (!gen.eta_sym || !T.phi || !T.M) return std::nullopt;
    Expr eta_x = substitute(*gen.eta_sym, "y", *T.phi);
    return normalize(mul(power(*T.M, integer(-1)), eta_x));
}

std::string render_text(const RunEcho& echo, const SymmetryReport& rep,
                        const VerifyReport& verify) {
    std::ostringstream os;
    os << "equation: x'' + f(x) x'^2 + g(x) = 0\n";
    os << "  f = " << echo.f_text << "\n";
    os << "  g = " << echo.g_text << "\n";
    os << "  domain: [" << echo.domain.lo << ", " << echo.domain.hi << "]  mode: " << echo.mode
       << "  samples: " << echo.samples << "\n";
    os << "transform to y'' + F(y) = 0:\n";
    os << "  M = " << opt_expr_text(rep.transform.M) << "\n";
    os << "  phi = " << opt_expr_text(rep.transform.phi) << "\n";
    os << "  G = M*g = " << opt_expr_text(rep.transform.G) << "\n";
    os << "classification: " << case_name(rep.symmetry_case);
    if (rep.linear_subtype) os << " (" << subtype_name(*rep.linear_subtype) << ")";
    os << "\n  algebra: " << rep.algebra << "   dimension: " << rep.dimension << "\n";
    os << "  verdict: " << (rep.conclusive ? "conclusive" : "inconclusive") << " ["
       << to_string(rep.grade) << "]\n";
    if (!rep.canonical_force.empty()) os << "  F(y) = " << rep.canonical_force << "\n";
    if (!rep.parameters.empty()) {
        os << "parameters:\n";
        for (const auto& [k, v] : rep.parameters) os << "  " << k << " = " << v.text() << "\n";
    }
    os << "generators (canonical chart t, y):\n";
    for (const Generator& gen : rep.generators) {
        os << "  [" << gen.label << "] " << gen.description;
        if (gen.residual >= 0) os << "   (residual " << sci(gen.residual) << ")";
        os << "\n";
    }
    bool any_original = false;
    for (const Generator& gen : rep.generators)
        if (gen.tau_sym && original_chart_xi(gen, rep.transform)) any_original = true;
    if (any_original) {
        os << "generators (original chart t, x; xi = eta/M with y = phi(x)):\n";
        for (const Generator& gen : rep.generators) {
            if (!gen.tau_sym) continue;
            auto xi = original_chart_xi(gen, rep.transform);
            if (!xi) continue;
            os << "  [" << gen.label << "] tau = " << to_string(*gen.tau_sym)
               << ", xi = " << to_string(*xi) << "\n";
        }
    }
    if (!rep.generator_note.empty()) os << "note: " << rep.generator_note << "\n";
    os << "decision trace:\n";
    for (const TraceStep& s : rep.trace) os << "  " << s.check << " -> " << s.verdict << "\n";
    if (verify.ran) {
        os << "verification (x0 = " << verify.x0 << ", v0 = " << verify.v0
           << ", t_end = " << verify.t_end << "):\n";
        os << "  trajectory: reached t = " << verify.t_reached;
        if (verify.truncated)
            os << " (truncated: " << verify.truncation_reason << ")";
        else
            os << " (complete)";
        os << "\n";
        os << "  transform residual " << sci(verify.transform_residual) << " vs "
           << sci(echo.tol_transform) << "  " << (verify.transform_pass ? "PASS" : "FAIL")
           << "\n";
        os << "  energy drift " << sci(verify.energy_drift) << " vs " << sci(1e-7) << "  "
           << (verify.energy_pass ? "PASS" : "FAIL") << "  (potential: "
           << (verify.potential_symbolic ? "closed form" : "quadrature") << ")\n";
        os << "  generator residuals max " << sci(verify.max_generator_residual) << " vs "
           << sci(echo.tol_residual) << "  " << (verify.generators_pass ? "PASS" : "FAIL")
           << "\n";
    }
    return os.str();
}

std::string render_json(const RunEcho& echo, const SymmetryReport& rep,
                        const VerifyReport& verify) {
    json j;
    j["input"] = {{"f", echo.f_text},
                  {"g", echo.g_text},
                  {"domain", {{"lo", echo.domain.lo}, {"hi", echo.domain.hi}}},
                  {"mode", echo.mode},
                  {"verify", echo.verify},
                  {"samples", echo.samples},
                  {"tolerances",
                   {{"constancy", echo.tol_constancy},
                    {"residual", echo.tol_residual},
                    {"transform", echo.tol_transform}}}};
    j["transform"] = {{"M", rep.transform.M ? json(to_string(*rep.transform.M)) : json("numeric")},
                      {"phi", rep.transform.phi ? json(to_string(*rep.transform.phi)) : json("numeric")},
                      {"G", rep.transform.G ? json(to_string(*rep.transform.G)) : json("numeric")}};
    json cls;
    cls["case"] = case_name(rep.symmetry_case);
    if (rep.linear_subtype) cls["subtype"] = subtype_name(*rep.linear_subtype);
    cls["algebra"] = rep.algebra;
    cls["dimension"] = rep.dimension;
    cls["conclusive"] = rep.conclusive;
    cls["grade"] = to_string(rep.grade);
    if (!rep.canonical_force.empty()) cls["canonical_force"] = rep.canonical_force;
    json params = json::object();
    for (const auto& [k, v] : rep.parameters) params[k] = param_json(v);
    cls["parameters"] = params;
    j["classification"] = cls;
    json gens = json::array();
    for (const Generator& gen : rep.generators) gens.push_back(generator_json(gen, rep.transform));
    j["generators"] = gens;
    if (!rep.generator_note.empty()) j["generator_note"] = rep.generator_note;
    json trace = json::array();
    for (const TraceStep& s : rep.trace) trace.push_back({{"check", s.check}, {"verdict", s.verdict}});
    j["decision_trace"] = trace;
    if (verify.ran) {
        json v;
        v["x0"] = verify.x0;
        v["v0"] = verify.v0;
        v["t_end"] = verify.t_end;
        v["t_reached"] = verify.t_reached;
        v["truncated"] = verify.truncated;
        if (verify.truncated) v["truncation_reason"] = verify.truncation_reason;
        v["transform_residual"] = verify.transform_residual;
        v["transform_pass"] = verify.transform_pass;
        v["energy_drift"] = verify.energy_drift;
        v["energy_pass"] = verify.energy_pass;
        v["potential_symbolic"] = verify.potential_symbolic;
        v["max_generator_residual"] = verify.max_generator_residual;
        v["generators_pass"] = verify.generators_pass;
        j["verification"] = v;
    }
    return j.dump(2);
}

}  // namespace lienard
