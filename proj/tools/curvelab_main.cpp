#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "curvelab/errors.hpp"
#include "curvelab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"curvelab: growth and convexity verification suites for harmonic "
                 "functions and eigenfunctions on model spaces"};
    app.require_subcommand(1);

    std::string config_path, out_override, summary_dir;
    bool plots = false;

    CLI::App* run = app.add_subcommand("run", "run a verification suite from a config file");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_flag("--plots", plots, "emit SVG plots where the suite supports them");
    run->add_option("--out", out_override, "output directory (overrides the config)");

    CLI::App* summary = app.add_subcommand("summary", "aggregate suite reports in a directory");
    summary->add_option("dir", summary_dir, "report directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return curvelab::kExitConfigError;
    }

    if (run->parsed()) {
        curvelab::ExperimentConfig cfg;
        try {
            cfg = curvelab::parse_config_file(config_path);
        } catch (const curvelab::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return curvelab::kExitConfigError;
        }
        if (plots) cfg.plots = true;
        if (!out_override.empty()) cfg.out = out_override;
        int code = curvelab::run_experiment(cfg);
        if (code == curvelab::kExitOk)
            std::cout << cfg.suite << ": pass (reports in " << cfg.out << ")\n";
        else if (code == curvelab::kExitMarginViolation)
            std::cout << cfg.suite << ": MARGIN VIOLATION (see " << cfg.out << "/"
                      << cfg.suite << ".json)\n";
        else
            std::cerr << cfg.suite << ": failed with exit code " << code << "\n";
        return code;
    }
    return curvelab::summarize_reports(summary_dir, std::cout);
}
