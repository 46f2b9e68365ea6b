// Rendering of classification runs: a human-readable text report and a JSON
// document that echoes the full configuration, so any run is reproducible
// from its report alone.
#pragma once

#include "lienard/classify.hpp"
#include "lienard/oracle.hpp"

namespace lienard {

// Configuration echo carried into every report.
struct RunEcho {
    std::string f_text, g_text;
    DomainInterval domain;
    std::string mode = "symbolic-first";  // or "numeric-only"
    bool verify = false;
    int samples = 64;
    double tol_constancy = 1e-9;
    double tol_residual = 1e-8;
    double tol_transform = 1e-6;
};

// Trajectory-level verification results (--verify).
struct VerifyReport {
    bool ran = false;
    double x0 = 0, v0 = 0;
    double t_end = 5.0;     // requested horizon
    double t_reached = 0;   // end of the trustworthy window
    bool truncated = false;
    std::string truncation_reason;
    double transform_residual = -1;  // max |d(y')/dt + F| on the window
    bool transform_pass = false;
    double energy_drift = -1;  // max relative drift of y'^2/2 + W
    bool energy_pass = false;
    bool potential_symbolic = false;
    double max_generator_residual = -1;  // worst certified generator
    bool generators_pass = false;
};

// Generator coefficient in the original chart: xi = eta / M with y = phi(x).
// Printable only when the generator and phi both have closed forms.
std::optional<Expr> original_chart_xi(const Generator& gen, const TransformData& T);

std::string render_text(const RunEcho& echo, const SymmetryReport& rep,
                        const VerifyReport& verify);
std::string render_json(const RunEcho& echo, const SymmetryReport& rep,
                        const VerifyReport& verify);

}  // namespace lienard
