#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "orbitgrowth/errors.hpp"
#include "orbitgrowth/report.hpp"
#include "orbitgrowth/version.hpp"

namespace orbitgrowth {

/// Entry point for the `orbitgrowth` command-line tool, callable in-process
/// for tests.  Exit codes: 0 success, 1 domain error (invalid input for the
/// chosen command), 2 parse error (flags or config), 3 budget exhausted
/// (partial output was still written).
inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{std::string("orbitgrowth ") + ORBITGROWTH_VERSION +
                 " - growth of map semigroups acting on the rational "
                 "projective line"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "csv";
    std::string out_path;
    std::int64_t budget = 0;
    double tol = 0.0;

    static const std::map<std::string, std::string> blurbs = {
        {"rho", "growth exponent of a degree vector"},
        {"count-words", "exact bounded-weight word counts"},
        {"constants", "asymptotic growth constants"},
        {"classify", "cyclic/acyclic classification of a degree vector"},
        {"crit-check", "critical-value simplicity and separation"},
        {"preperiodic", "decide preperiodicity of the base point"},
        {"orbit-census", "functions and points of bounded height"},
        {"beta", "orbit height-sum constant with certified tail"},
        {"predict", "predicted function count at height cutoffs"},
        {"theta", "counting ratio N_funcs(X) / X^rho on a grid"},
    };
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
        sub->add_option("--config", config_path, "configuration file (key = value)")
            ->required();
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--budget", budget, "node budget override");
        sub->add_option("--tol", tol, "tolerance override for rho");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help and --version exit 0
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
    }
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());

    SystemConfig cfg;
    try {
        cfg = parse_config(text);
    } catch (const parse_error& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << "\n";
        return 2;
    }
    if (sub->count("--budget") > 0) cfg.budget = budget;
    if (sub->count("--tol") > 0) cfg.tol = tol;

    Report report;
    try {
        report = run_command(command, cfg);
    } catch (const parse_error& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const invalid_input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return 1;
        }
        os = &file;
    }
    if (format == "jsonl") emit_jsonl(report, *os);
    else emit_csv(report, *os);
    os->flush();
    return report.budget_exhausted ? 3 : 0;
}

}  // namespace orbitgrowth
