// Command-line front end: `lienard classify` runs the classification pipeline
// on one equation (or a newline-delimited batch), `lienard selftest` runs the
// built-in verification catalogue.  Exit codes: 0 certain, 2 inconclusive,
// 1 input error (no report is emitted on exit 1).
#include "lienard/acceptance.hpp"
#include "lienard/driver.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// Parses "lo:hi" into a domain interval; throws CLI::ValidationError on
// malformed input so CLI11 reports it as a usage error.
lienard::DomainInterval parse_domain(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw CLI::ValidationError("--domain", "expected lo:hi, got '" + text + "'");
    lienard::DomainInterval d;
    try {
        std::size_t used = 0;
        d.lo = std::stod(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("lo");
        const std::string hi = text.substr(colon + 1);
        d.hi = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument("hi");
    } catch (const std::exception&) {
        throw CLI::ValidationError("--domain", "expected numeric lo:hi, got '" + text + "'");
    }
    if (!(d.lo < d.hi))
        throw CLI::ValidationError("--domain", "lower bound must be below upper bound");
    return d;
}

int emit(const lienard::RunOutcome& out) {
    if (!out.stdout_payload.empty()) std::cout << out.stdout_payload;
    if (!out.diagnostics.empty()) std::cerr << out.diagnostics;
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie point-symmetry classifier for x'' + f(x) x'^2 + g(x) = 0"};
    app.require_subcommand(0, 1);

    lienard::RunConfig cfg;
    std::string domain_text = "1:2";
    std::string mode = "symbolic-first";
    std::string batch_file;

    CLI::App* classify = app.add_subcommand("classify", "Classify one equation");
    classify->add_option("--f", cfg.f_text, "Coefficient f(x) of x'^2");
    classify->add_option("--g", cfg.g_text, "Restoring term g(x)");
    classify->add_option("--domain", domain_text, "Working interval lo:hi (default 1:2)");
    classify->add_option("--mode", mode, "symbolic-first (default) or numeric-only")
        ->check(CLI::IsMember({"symbolic-first", "numeric-only"}));
    classify->add_flag("--verify", cfg.verify, "Certify the verdict along a trajectory");
    classify->add_option("--samples", cfg.samples, "Sample count for numeric decisions (>=16)")
        ->check(CLI::Range(16, 1 << 20));
    classify->add_option("--tol-constancy", cfg.tol_constancy, "Numeric constancy tolerance");
    classify->add_option("--tol-residual", cfg.tol_residual, "Symmetry residual tolerance");
    classify->add_option("--tol-transform", cfg.tol_transform, "Trajectory mapping tolerance");
    classify->add_flag("--json", cfg.json, "Emit the JSON report instead of text");
    classify->add_option("--batch", batch_file,
                         "Newline-delimited file of 'f ; g' lines; emits NDJSON");

    std::string filter;
    CLI::App* selftest = app.add_subcommand("selftest", "Run the verification catalogue");
    selftest->add_option("--filter", filter, "Run only checks whose name contains this text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, std::cerr);
        return 1;
    }

    if (selftest->parsed()) {
        const auto results = lienard::run_acceptance(filter, std::cout);
        int failed = 0;
        for (const auto& r : results) failed += r.pass ? 0 : 1;
        std::cout << results.size() - failed << " passed, " << failed << " failed\n";
        return failed == 0 ? 0 : 1;
    }

    if (classify->parsed()) {
        try {
            cfg.domain = parse_domain(domain_text);
        } catch (const CLI::ParseError& e) {
            app.exit(e, std::cout, std::cerr);
            return 1;
        }
        cfg.numeric_only = (mode == "numeric-only");
        if (!batch_file.empty()) {
            std::ifstream in(batch_file);
            if (!in) {
                std::cerr << "error: cannot open batch file '" << batch_file << "'\n";
                return 1;
            }
            std::ostringstream text;
            text << in.rdbuf();
            return emit(lienard::run_batch(cfg, text.str()));
        }
        if (cfg.f_text.empty() || cfg.g_text.empty()) {
            std::cerr << "error: classify requires --f and --g (or --batch FILE)\n";
            return 1;
        }
        return emit(lienard::run_classification(cfg));
    }

    std::cout << app.help();
    return 1;
}
