// CLI-facing orchestration: parse the input expressions, classify, optionally
// verify along a trajectory, render the report, and map outcomes to exit
// codes (0 certain, 1 input error, 2 inconclusive).
#pragma once

#include "lienard/report.hpp"

namespace lienard {

struct RunConfig {
    std::string f_text, g_text;
    DomainInterval domain;
    bool numeric_only = false;
    bool verify = false;
    int samples = 64;
    double tol_constancy = 1e-9;
    double tol_residual = 1e-8;
    double tol_transform = 1e-6;
    bool json = false;
};

struct RunOutcome {
    int exit_code = 0;
    std::string stdout_payload;  // rendered report; empty on input error
    std::string diagnostics;     // for stderr
};

RunOutcome run_classification(const RunConfig& cfg);

// Newline-delimited batch: each line "f ; g"; blank lines and lines starting
// with '#' are skipped.  Lines classify concurrently; output is one JSON
// document per line, in input order.  Exit: 1 if any line failed to parse,
// else 2 if any was inconclusive, else 0.
RunOutcome run_batch(const RunConfig& base, const std::string& batch_text);

}  // namespace lienard
