#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace curvelab {

/// Flat key=value experiment description; list values comma-separated.
/// `suite` and `seed` are mandatory.
struct ExperimentConfig {
    std::string suite;
    std::uint64_t seed = 0;

    std::vector<int> ns{2, 3, 4};
    std::vector<double> curvatures{-1.0, 0.0, 1.0};
    int lmax = 12;
    int lmin = 2;
    int fields = 100;
    int r_count = 512;
    double r_lo_frac = 1e-3;
    double r_hi_frac = 0.9;
    double r_cap = 2.0;          ///< radius cap for unbounded spaces
    double bracket_slack = 0.5;  ///< extra curvature bracket width (0 = exact only)
    double tol_identity = 1e-8;
    double tol_inequality = 1e-6;
    int triples = 500;           ///< doubling sample count
    double k_bound = 1.0;        ///< doubling curvature bound
    double alpha = 0.5;          ///< sandwich
    double eps = 0.1;
    double sweep_r_lo = 0.05;
    double sweep_r_hi = 0.5;
    int sweep_r_count = 8;
    double r = 0.1;              ///< growth/df radius
    double s = 0.1;
    double r0 = 0.4;             ///< chain step radius
    std::string out = "reports";
    bool plots = false;
};

/// Parses the config text; throws ConfigError on unknown keys, missing
/// mandatory keys, or non-positive tolerances.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Suite names accepted by run_experiment.
const std::vector<std::string>& suite_names();

/// Exit codes of the experiment driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitMarginViolation = 1,
    kExitConfigError = 2,
    kExitSolverFailure = 3,
};

/// Runs the configured suite, writes <out>/<suite>.json (+ .csv, optional
/// .svg) and returns the exit code.
int run_experiment(const ExperimentConfig& config);

/// Aggregates suite reports in a directory into a fixed-width table, one
/// row per suite ordered by name.  Returns kExitOk, or kExitConfigError if
/// the directory holds no reports.
int summarize_reports(const std::string& dir, std::ostream& os);

} // namespace curvelab
