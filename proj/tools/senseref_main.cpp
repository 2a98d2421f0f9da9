#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "senseref/senseref.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace {

bool stdin_is_tty() {
#if defined(__unix__) || defined(__APPLE__)
    return isatty(0) != 0;
#else
    return false;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"senseref — an evaluator and judgment checker for a small dependent type "
                 "theory, with sense/reference analysis on top"};

    senseref::cli_config cfg;
    std::string batch_file;
    std::string defs_file;
    std::string mode = "defn";

    cli.add_option("batch", batch_file, "batch file to run (omit for an interactive session)");
    cli.add_option("--fuel", cfg.fuel, "evaluation step budget")->capture_default_str();
    cli.add_option("--bound", cfg.bound, "max size of enumerated closed instances")
        ->capture_default_str();
    cli.add_option("--samples", cfg.samples, "random instances per hypothesis")
        ->capture_default_str();
    cli.add_option("--mode", mode, "sense identity mode: defn | trace")->capture_default_str();
    cli.add_flag("--extensional", cfg.extensional,
                 "let bounded coextensionality back type equality");
    cli.add_option("--seed", cfg.seed, "seed for sampled instance generation")
        ->capture_default_str();
    cli.add_flag("--unicode", cfg.unicode, "use the arrow and equality glyphs in output");
    cli.add_option("--evidence-dir", cfg.evidence_dir,
                   "dump replayable evidence files into this directory");
    cli.add_option("--defs", defs_file, "definition file to load before starting");

    CLI11_PARSE(cli, argc, argv);

    if (mode == "trace") cfg.mode = senseref::sense_mode::trace;
    else if (mode != "defn") {
        std::cerr << "unknown --mode '" << mode << "' (defn|trace)\n";
        return 3;
    }
    if (cfg.fuel < 0 || cfg.bound < 0 || cfg.samples < 0) {
        std::cerr << "budgets must be non-negative\n";
        return 3;
    }

    if (!batch_file.empty()) {
        if (!defs_file.empty()) {
            // prepend the definitions by running a synthetic load
            std::ifstream probe(defs_file);
            if (!probe) {
                std::cerr << "cannot open --defs file '" << defs_file << "'\n";
                return 3;
            }
        }
        senseref::session s;
        s.cfg = cfg;
        auto slash = batch_file.find_last_of('/');
        s.base_dir = slash == std::string::npos ? "" : batch_file.substr(0, slash);
        if (!defs_file.empty()) senseref::execute_line(s, "load " + defs_file, std::cout);
        std::ifstream f(batch_file);
        if (!f) {
            std::cerr << "cannot open batch file '" << batch_file << "'\n";
            return 3;
        }
        return senseref::run_batch_stream(s, f, std::cout);
    }

    senseref::session s;
    s.cfg = cfg;
    if (!defs_file.empty()) senseref::execute_line(s, "load " + defs_file, std::cout);
    senseref::run_repl(s, std::cin, std::cout, stdin_is_tty());
    return 0;
}
