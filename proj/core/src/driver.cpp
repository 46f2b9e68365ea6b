#include "lienard/driver.hpp"

#include "lienard/parse.hpp"

#include <future>
#include <sstream>
#include <vector>

namespace lienard {

namespace {

RunEcho make_echo(const RunConfig& cfg) {
    RunEcho echo;
    echo.f_text = cfg.f_text;
    echo.g_text = cfg.g_text;
    echo.domain = cfg.domain;
    echo.mode = cfg.numeric_only ? "numeric-only" : "symbolic-first";
    echo.verify = cfg.verify;
    echo.samples = cfg.samples;
    echo.tol_constancy = cfg.tol_constancy;
    echo.tol_residual = cfg.tol_residual;
    echo.tol_transform = cfg.tol_transform;
    return echo;
}

VerifyReport run_verification(const RunConfig& cfg, const SymmetryReport& rep, const Expr& f,
                              const Expr& g) {
    VerifyReport v;
    v.ran = true;
    v.x0 = 0.5 * (cfg.domain.lo + cfg.domain.hi);
    v.v0 = 0;
    OracleConfig ocfg;
    v.t_end = ocfg.t_end;
    Trajectory tr = integrate_lienard(f, g, v.x0, v.v0, ocfg);
    v.truncated = tr.truncated;
    v.truncation_reason = tr.reason;
    v.t_reached = tr.t.empty() ? 0 : tr.t.back();
    MappedTrajectory m = map_trajectory(tr, rep.transform);
    v.transform_residual = transformation_residual(m);
    v.transform_pass = v.transform_residual >= 0 && v.transform_residual < cfg.tol_transform;
    v.potential_symbolic =
        rep.transform.M && rep.transform.G &&
        antiderivative(normalize(mul(*rep.transform.M, *rep.transform.G)), "x").has_value();
    v.energy_drift = energy_drift(m, build_potential(rep.transform));
    v.energy_pass = v.energy_drift >= 0 && v.energy_drift < 1e-7;
    v.max_generator_residual = -1;
    for (const Generator& gen : rep.generators)
        v.max_generator_residual = std::max(v.max_generator_residual, gen.residual);
    v.generators_pass =
        v.max_generator_residual >= 0 && v.max_generator_residual < cfg.tol_residual;
    return v;
}

}  // namespace

RunOutcome run_classification(const RunConfig& cfg) {
    RunOutcome out;
    if (cfg.samples < 16) {
        out.exit_code = 1;
        out.diagnostics = "samples must be at least 16";
        return out;
    }
    if (!(cfg.domain.lo < cfg.domain.hi)) {
        out.exit_code = 1;
        out.diagnostics = "domain must satisfy lo < hi";
        return out;
    }
    if (cfg.tol_constancy <= 0 || cfg.tol_residual <= 0 || cfg.tol_transform <= 0) {
        out.exit_code = 1;
        out.diagnostics = "tolerances must be positive";
        return out;
    }
    Expr f, g;
    try {
        f = parse(cfg.f_text);
    } catch (const Error& e) {
        out.exit_code = 1;
        out.diagnostics = std::string("--f: ") + e.what();
        return out;
    }
    try {
        g = parse(cfg.g_text);
    } catch (const Error& e) {
        out.exit_code = 1;
        out.diagnostics = std::string("--g: ") + e.what();
        return out;
    }

    ClassifyConfig ccfg;
    ccfg.domain = cfg.domain;
    ccfg.samples = cfg.samples;
    ccfg.tol_constancy = cfg.tol_constancy;
    ccfg.numeric_only = cfg.numeric_only;
    SymmetryReport rep;
    try {
        rep = classify(f, g, ccfg);
    } catch (const Error& e) {
        out.exit_code = 1;
        out.diagnostics = std::string("classification failed: ") + e.what();
        return out;
    }

    VerifyReport verify;
    if (cfg.verify) verify = run_verification(cfg, rep, f, g);

    const RunEcho echo = make_echo(cfg);
    out.stdout_payload = cfg.json ? render_json(echo, rep, verify)
                                  : render_text(echo, rep, verify);
    out.exit_code = rep.conclusive ? 0 : 2;
    return out;
}

RunOutcome run_batch(const RunConfig& base, const std::string& batch_text) {
    struct Line {
        size_t index;
        std::string f_text, g_text;
        std::string error;  // pre-parse (format) error
    };
    std::vector<Line> lines;
    std::istringstream in(batch_text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#') continue;
        Line L;
        L.index = lineno;
        const auto sep = raw.find(';');
        if (sep == std::string::npos) {
            L.error = "expected 'f ; g'";
        } else {
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            L.f_text = trim(raw.substr(0, sep));
            L.g_text = trim(raw.substr(sep + 1));
            if (L.f_text.empty() || L.g_text.empty()) L.error = "expected 'f ; g'";
        }
        lines.push_back(std::move(L));
    }

    std::vector<std::future<RunOutcome>> futures;
    futures.reserve(lines.size());
    for (const Line& L : lines) {
        futures.push_back(std::async(std::launch::async, [&base, L]() -> RunOutcome {
            if (!L.error.empty()) {
                RunOutcome o;
                o.exit_code = 1;
                o.diagnostics = L.error;
                return o;
            }
            RunConfig cfg = base;
            cfg.f_text = L.f_text;
            cfg.g_text = L.g_text;
            cfg.json = true;
            return run_classification(cfg);
        }));
    }

    RunOutcome out;
    bool any_input_error = false, any_inconclusive = false;
    std::ostringstream payload, diags;
    for (size_t i = 0; i < lines.size(); ++i) {
        RunOutcome r = futures[i].get();
        if (r.exit_code == 1) {
            any_input_error = true;
            diags << "line " << lines[i].index << ": " << r.diagnostics << "\n";
            payload << "{\"line\": " << lines[i].index << ", \"error\": true}" << "\n";
        } else {
            if (r.exit_code == 2) any_inconclusive = true;
            std::string compact = r.stdout_payload;
            // NDJSON: one document per line.
            std::string::size_type pos = 0;
            while ((pos = compact.find('\n', pos)) != std::string::npos) compact.erase(pos, 1);
            payload << compact << "\n";
        }
    }
    out.stdout_payload = payload.str();
    out.diagnostics = diags.str();
    out.exit_code = any_input_error ? 1 : (any_inconclusive ? 2 : 0);
    return out;
}

}  // namespace lienard
