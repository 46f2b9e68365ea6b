// Report rendering and the CLI-facing driver: JSON round-trip, exit-code
// contract, and batch mode.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lienard/driver.hpp"
#include "lienard/parse.hpp"

#include "json.hpp"

#include <string>
#include <vector>

using namespace lienard;
using nlohmann::json;

namespace {
RunConfig base(const std::string& f, const std::string& g) {
    RunConfig cfg;
    cfg.f_text = f;
    cfg.g_text = g;
    cfg.json = true;
    return cfg;
}

// An expression string printed by the report must re-parse (with the report's
// free symbols allowed) and re-print to itself: printing is a fixed point.
void check_round_trip(const std::string& text) {
    if (text.find("numeric") != std::string::npos) return;  // opaque placeholder
    ParseOptions opts;
    opts.allow_extra_variables = true;
    const Expr e = normalize(parse(text, opts));
    CHECK_MESSAGE(to_string(e) == text, "not a fixed point: " << text);
}
}  // namespace

TEST_CASE("conclusive classification exits 0 and reports the verdict") {
    RunOutcome out = run_classification(base("0", "x^3"));
    CHECK(out.exit_code == 0);
    REQUIRE(!out.stdout_payload.empty());
    json j = json::parse(out.stdout_payload);
    CHECK(j["classification"]["case"] == "power-law");
    CHECK(j["classification"]["algebra"] == "A2");
    CHECK(j["classification"]["dimension"] == 2);
    CHECK(j["classification"]["conclusive"] == true);
    CHECK(j["classification"]["grade"] == "symbolic");
    CHECK(j["classification"]["parameters"]["n"]["exact"] == true);
}

TEST_CASE("defaults are echoed so a run is reproducible from its report") {
    RunOutcome out = run_classification(base("0", "x"));
    json j = json::parse(out.stdout_payload);
    CHECK(j["input"]["f"] == "0");
    CHECK(j["input"]["g"] == "x");
    CHECK(j["input"]["mode"] == "symbolic-first");
    CHECK(j["input"]["samples"] == 64);
    CHECK(j["input"]["domain"]["lo"] == 1.0);
    CHECK(j["input"]["domain"]["hi"] == 2.0);
    CHECK(j["input"]["tolerances"]["constancy"] == 1e-9);
    CHECK(j["input"]["tolerances"]["residual"] == 1e-8);
    CHECK(j["input"]["tolerances"]["transform"] == 1e-6);
}

TEST_CASE("printed expressions in the JSON report are print fixed points") {
    RunConfig cfg = base("x^(-1)", "x / 2");
    cfg.verify = true;
    RunOutcome out = run_classification(cfg);
    CHECK(out.exit_code == 0);
    json j = json::parse(out.stdout_payload);
    CHECK(j["classification"]["algebra"] == "sl(3,R)");
    check_round_trip(j["transform"]["M"].get<std::string>());
    check_round_trip(j["transform"]["phi"].get<std::string>());
    check_round_trip(j["transform"]["G"].get<std::string>());
    int printable = 0;
    for (const auto& gen : j["generators"]) {
        if (!gen["canonical"].contains("tau")) continue;
        ++printable;
        check_round_trip(gen["canonical"]["tau"].get<std::string>());
        check_round_trip(gen["canonical"]["eta"].get<std::string>());
        if (gen["original"].contains("xi"))
            check_round_trip(gen["original"]["xi"].get<std::string>());
    }
    CHECK(printable >= 1);
}

TEST_CASE("verification block records the trajectory certificates") {
    RunConfig cfg = base("x^(-1)", "x / 2");
    cfg.verify = true;
    RunOutcome out = run_classification(cfg);
    json j = json::parse(out.stdout_payload);
    REQUIRE(j.contains("verification"));
    const auto& v = j["verification"];
    CHECK(v["transform_pass"] == true);
    CHECK(v["energy_pass"] == true);
    CHECK(v["generators_pass"] == true);
    CHECK(v["transform_residual"].get<double>() < 1e-6);
    CHECK(v["energy_drift"].get<double>() < 1e-7);
    CHECK(v["max_generator_residual"].get<double>() < 1e-8);
}

TEST_CASE("input errors exit 1 with no report") {
    RunOutcome bad_symbol = run_classification(base("x + t", "x"));
    CHECK(bad_symbol.exit_code == 1);
    CHECK(bad_symbol.stdout_payload.empty());
    CHECK(bad_symbol.diagnostics.find("t") != std::string::npos);

    RunOutcome bad_syntax = run_classification(base("0", "x +"));
    CHECK(bad_syntax.exit_code == 1);
    CHECK(bad_syntax.stdout_payload.empty());

    RunConfig cfg = base("0", "x");
    cfg.samples = 8;
    RunOutcome bad_samples = run_classification(cfg);
    CHECK(bad_samples.exit_code == 1);
    CHECK(bad_samples.stdout_payload.empty());

    cfg = base("0", "x");
    cfg.domain = DomainInterval{2.0, 1.0};
    CHECK(run_classification(cfg).exit_code == 1);
}

TEST_CASE("text mode renders a human-readable report") {
    RunConfig cfg = base("0", "exp(2*x)");
    cfg.json = false;
    RunOutcome out = run_classification(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.stdout_payload.find("algebra: A2") != std::string::npos);
    CHECK(out.stdout_payload.find("dimension: 2") != std::string::npos);
    CHECK(out.stdout_payload.find("decision trace:") != std::string::npos);
}

TEST_CASE("batch mode emits one JSON document per input line in order") {
    RunConfig cfg;
    cfg.json = true;
    const std::string text =
        "# comment line\n"
        "0 ; x^3\n"
        "\n"
        "x^(-1) ; x / 2\n"
        "0 ; x + x^(-3)\n";
    RunOutcome out = run_batch(cfg, text);
    CHECK(out.exit_code == 0);
    std::vector<std::string> lines;
    std::istringstream in(out.stdout_payload);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(json::parse(lines[0])["classification"]["case"] == "power-law");
    CHECK(json::parse(lines[1])["classification"]["case"] == "linear");
    CHECK(json::parse(lines[2])["classification"]["case"] == "ermakov-pinney");
    CHECK(json::parse(lines[0])["input"]["g"] == "x^3");
}

TEST_CASE("batch mode reports malformed lines and exits 1") {
    RunConfig cfg;
    const std::string text =
        "0 ; x^3\n"
        "just one field\n";
    RunOutcome out = run_batch(cfg, text);
    CHECK(out.exit_code == 1);
    CHECK(out.diagnostics.find("line 2") != std::string::npos);
    // well-formed lines still classified
    CHECK(out.stdout_payload.find("power-law") != std::string::npos);
}
