#include "curvelab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "curvelab/eigen_extend.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/harmonic_field.hpp"
#include "curvelab/model_space.hpp"
#include "curvelab/nodal.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/quadrature.hpp"
#include "curvelab/report_io.hpp"
#include "curvelab/rng.hpp"

namespace curvelab {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + v);
    }
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"convexity", "doubling", "sandwich",
                                                "growth",    "chain",    "df",
                                                "nodal",     "lemma54"};
    return names;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool have_seed = false, have_suite = false;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(stripped.substr(0, eq));
        std::string val = trim(stripped.substr(eq + 1));
        if (val.empty()) throw ConfigError("empty value for '" + key + "'");

        if (key == "suite") {
            cfg.suite = val;
            have_suite = true;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
            have_seed = true;
        } else if (key == "n") {
            cfg.ns.clear();
            for (const auto& p : split(val, ','))
                cfg.ns.push_back(static_cast<int>(parse_int(key, p)));
        } else if (key == "curvatures") {
            cfg.curvatures.clear();
            for (const auto& p : split(val, ',')) cfg.curvatures.push_back(parse_double(key, p));
        } else if (key == "lmax") {
            cfg.lmax = static_cast<int>(parse_int(key, val));
        } else if (key == "lmin") {
            cfg.lmin = static_cast<int>(parse_int(key, val));
        } else if (key == "fields") {
            cfg.fields = static_cast<int>(parse_int(key, val));
        } else if (key == "r_count") {
            cfg.r_count = static_cast<int>(parse_int(key, val));
        } else if (key == "r_lo_frac") {
            cfg.r_lo_frac = parse_double(key, val);
        } else if (key == "r_hi_frac") {
            cfg.r_hi_frac = parse_double(key, val);
        } else if (key == "r_cap") {
            cfg.r_cap = parse_double(key, val);
        } else if (key == "bracket_slack") {
            cfg.bracket_slack = parse_double(key, val);
        } else if (key == "tol_identity") {
            cfg.tol_identity = parse_double(key, val);
        } else if (key == "tol_inequality") {
            cfg.tol_inequality = parse_double(key, val);
        } else if (key == "triples") {
            cfg.triples = static_cast<int>(parse_int(key, val));
        } else if (key == "k_bound") {
            cfg.k_bound = parse_double(key, val);
        } else if (key == "alpha") {
            cfg.alpha = parse_double(key, val);
        } else if (key == "eps") {
            cfg.eps = parse_double(key, val);
        } else if (key == "sweep_r_lo") {
            cfg.sweep_r_lo = parse_double(key, val);
        } else if (key == "sweep_r_hi") {
            cfg.sweep_r_hi = parse_double(key, val);
        } else if (key == "sweep_r_count") {
            cfg.sweep_r_count = static_cast<int>(parse_int(key, val));
        } else if (key == "r") {
            cfg.r = parse_double(key, val);
        } else if (key == "s") {
            cfg.s = parse_double(key, val);
        } else if (key == "r0") {
            cfg.r0 = parse_double(key, val);
        } else if (key == "out") {
            cfg.out = val;
        } else if (key == "plots") {
            cfg.plots = parse_int(key, val) != 0;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!have_suite) throw ConfigError("missing mandatory key 'suite'");
    if (!have_seed) throw ConfigError("missing mandatory key 'seed' (runs must be reproducible)");
    if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end())
        throw ConfigError("unknown suite '" + cfg.suite + "'");
    if (!(cfg.tol_identity > 0.0) || !(cfg.tol_inequality > 0.0))
        throw ConfigError("tolerances must be positive");
    if (cfg.ns.empty() || cfg.curvatures.empty())
        throw ConfigError("dimension and curvature lists must be nonempty");
    for (int n : cfg.ns)
        if (n < 2 || n > 4) throw ConfigError("dimensions must be 2, 3 or 4");
    if (cfg.lmax < 0 || cfg.lmin < 0 || cfg.lmin > cfg.lmax)
        throw ConfigError("need 0 <= lmin <= lmax");
    if (cfg.fields < 1 || cfg.r_count < 2 || cfg.triples < 1 || cfg.sweep_r_count < 1)
        throw ConfigError("counts must be positive");
    if (!(cfg.r_lo_frac > 0.0) || !(cfg.r_hi_frac > cfg.r_lo_frac) || !(cfg.r_hi_frac <= 0.999))
        throw ConfigError("need 0 < r_lo_frac < r_hi_frac <= 0.999");
    if (!(cfg.r_cap > 0.0)) throw ConfigError("r_cap must be positive");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("need 0 < alpha < 1");
    if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

struct SuiteOutcome {
    json report;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    int cases = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    bool pass = true;

    void add_margin(double margin, double tol) {
        worst_margin = std::min(worst_margin, margin);
        if (margin < -tol) pass = false;
    }
};

json params_echo(const ExperimentConfig& c) {
    json p;
    p["n"] = c.ns;
    p["curvatures"] = c.curvatures;
    p["lmax"] = c.lmax;
    p["lmin"] = c.lmin;
    p["fields"] = c.fields;
    p["r_count"] = c.r_count;
    p["r_lo_frac"] = c.r_lo_frac;
    p["r_hi_frac"] = c.r_hi_frac;
    p["r_cap"] = c.r_cap;
    p["bracket_slack"] = c.bracket_slack;
    p["tol_identity"] = c.tol_identity;
    p["tol_inequality"] = c.tol_inequality;
    p["triples"] = c.triples;
    p["k_bound"] = c.k_bound;
    p["alpha"] = c.alpha;
    p["eps"] = c.eps;
    p["sweep_r_lo"] = c.sweep_r_lo;
    p["sweep_r_hi"] = c.sweep_r_hi;
    p["sweep_r_count"] = c.sweep_r_count;
    p["r"] = c.r;
    p["s"] = c.s;
    p["r0"] = c.r0;
    return p;
}

// radius grid for a model curvature under a bracket upper bound
std::vector<double> bracket_grid(const ExperimentConfig& cfg, double K_upper) {
    double trig = K_upper > 0.0 ? kPi / (2.0 * std::sqrt(K_upper)) : kUnbounded;
    double cap = std::min(trig, cfg.r_cap);
    return log_grid(cfg.r_lo_frac * cap, cfg.r_hi_frac * cap, cfg.r_count);
}

std::vector<int> all_degrees(int lmax) {
    std::vector<int> d(lmax + 1);
    for (int l = 0; l <= lmax; ++l) d[l] = l;
    return d;
}

SuiteOutcome run_convexity(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"n", "K", "field", "seed", "worst_residual_i", "worst_residual_ii",
                      "worst_residual_ii_slack", "worst_gl_diff", "pass"};
    json reports = json::array();

    std::uint64_t combo_tag = 0;
    for (int n : cfg.ns) {
        for (double K : cfg.curvatures) {
            ++combo_tag;
            ModelSpace space(n, K);
            ComparisonPair exact(K, K);
            RadialProfileSet profiles(space, all_degrees(cfg.lmax), bracket_grid(cfg, K));

            bool with_slack = cfg.bracket_slack > 0.0;
            ComparisonPair slack(K - cfg.bracket_slack, K + cfg.bracket_slack);
            std::unique_ptr<RadialProfileSet> slack_profiles;
            if (with_slack)
                slack_profiles = std::make_unique<RadialProfileSet>(
                    space, all_degrees(cfg.lmax), bracket_grid(cfg, slack.K));

            struct Row {
                std::uint64_t seed;
                double wi, wii, wii_slack, gl;
                bool ok;
            };
            std::vector<Row> rows(cfg.fields);
            GrowthReport sample;
            parallel_for(cfg.fields, [&](std::size_t f) {
                std::uint64_t fseed = Rng::sub_seed(cfg.seed, combo_tag * 1000003ULL + f);
                HarmonicField field = random_field(space, cfg.lmax, fseed);
                GrowthReport rep =
                    convexity_residuals(field, profiles, exact, cfg.tol_inequality);
                rep.seed = fseed;
                double wi = *std::min_element(rep.residual_i.begin(), rep.residual_i.end());
                double wii = *std::min_element(rep.residual_ii.begin(), rep.residual_ii.end());
                double wii_slack = std::numeric_limits<double>::infinity();
                if (with_slack) {
                    GrowthReport srep = convexity_residuals(field, *slack_profiles, slack,
                                                            cfg.tol_inequality);
                    wii_slack =
                        *std::min_element(srep.residual_ii.begin(), srep.residual_ii.end());
                }
                MonotonicityReport gl =
                    frequency_monotonicity(field, profiles, std::abs(K), cfg.tol_inequality);
                bool ok = wi >= -cfg.tol_identity && wii >= -cfg.tol_inequality &&
                          (!with_slack || wii_slack >= -cfg.tol_inequality) && gl.pass;
                rows[f] = {fseed, wi, wii, wii_slack, gl.worst, ok};
                if (f == 0) {
                    rep.params["seed_echo"] = static_cast<double>(fseed % 1000000);
                    sample = rep;
                }
            });

            for (int f = 0; f < cfg.fields; ++f) {
                const Row& row = rows[f];
                out.add_margin(row.wi, cfg.tol_identity);
                out.add_margin(row.wii, cfg.tol_inequality);
                if (with_slack) out.add_margin(row.wii_slack, cfg.tol_inequality);
                out.add_margin(row.gl, cfg.tol_inequality);
                out.csv_rows.push_back({std::to_string(n), format_double(K), std::to_string(f),
                                        std::to_string(row.seed), format_double(row.wi),
                                        format_double(row.wii), format_double(row.wii_slack),
                                        format_double(row.gl), row.ok ? "1" : "0"});
                ++out.cases;
            }
            sample.seed = rows.empty() ? cfg.seed : rows[0].seed;
            reports.push_back(growth_report_json(sample));
        }
    }
    out.report["reports"] = reports;
    return out;
}

SuiteOutcome run_doubling(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"n", "K_model", "case", "r", "s", "margin"};

    struct Combo {
        int n;
        double K;
    };
    std::vector<Combo> combos;
    for (int n : cfg.ns)
        if (n <= 3)
            for (double K : cfg.curvatures)
                if (std::abs(K) <= cfg.k_bound) combos.push_back({n, K});
    if (combos.empty()) throw ConfigError("doubling: no (n, K) combos within the bound");

    struct Case {
        int index;
        double r, s;
        std::uint64_t field_seed;
    };
    std::map<std::pair<int, double>, std::vector<Case>> by_combo;
    for (int t = 0; t < cfg.triples; ++t) {
        const Combo& c = combos[t % combos.size()];
        Rng rng(Rng::sub_seed(cfg.seed, 7000000ULL + t));
        double smax = 1.0 / (4.0 * std::sqrt(c.n * cfg.k_bound));
        double s = smax * rng.uniform(0.35, 0.95);
        double r = s * rng.uniform(0.08, 0.98);
        by_combo[{c.n, c.K}].push_back({t, r, s, Rng::sub_seed(cfg.seed, 9000000ULL + t)});
    }

    for (const auto& [key, cases] : by_combo) {
        ModelSpace space(key.first, key.second);
        std::vector<double> radii;
        for (const Case& c : cases) {
            radii.push_back(c.r);
            radii.push_back(2.0 * c.r);
            radii.push_back(c.s);
            radii.push_back(2.0 * c.s);
        }
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        RadialProfileSet profiles(space, all_degrees(cfg.lmax), radii);
        std::vector<double> margins(cases.size());
        parallel_for(cases.size(), [&](std::size_t i) {
            HarmonicField field = random_field(space, cfg.lmax, cases[i].field_seed);
            margins[i] = doubling_margin(field, profiles, cases[i].r, cases[i].s, cfg.k_bound);
        });
        for (std::size_t i = 0; i < cases.size(); ++i) {
            out.add_margin(margins[i], cfg.tol_identity);
            out.csv_rows.push_back({std::to_string(key.first), format_double(key.second),
                                    std::to_string(cases[i].index), format_double(cases[i].r),
                                    format_double(cases[i].s), format_double(margins[i])});
            ++out.cases;
        }
    }
    std::sort(out.csv_rows.begin(), out.csv_rows.end(),
              [](const auto& a, const auto& b) {
                  return std::stoi(a[2]) < std::stoi(b[2]);
              });
    return out;
}

SuiteOutcome run_sandwich(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"base", "l", "lambda", "r", "s", "lhs", "rhs", "margin",
                      "fitted_C1", "fitted_C2"};
    std::vector<double> radii =
        log_grid(cfg.sweep_r_lo, cfg.sweep_r_hi, cfg.sweep_r_count);
    json bases = json::object();
    for (BaseManifold base : {BaseManifold::Circle, BaseManifold::Sphere2}) {
        std::string name = base == BaseManifold::Circle ? "circle" : "sphere2_zonal";
        SandwichReport rep = sandwich_sweep(base, cfg.lmax, radii, cfg.alpha, cfg.eps);
        json b;
        b["lower_min"] = rep.lower_min;
        b["lower_max"] = rep.lower_max;
        b["lower_spread"] = rep.lower_max / rep.lower_min;
        b["upper_min"] = rep.upper_min;
        b["upper_max"] = rep.upper_max;
        b["upper_spread"] = rep.upper_max / rep.upper_min;
        bases[name] = b;
        // bounded below by a positive constant, bounded above: the margins
        out.add_margin(rep.lower_min, 0.0);
        out.add_margin(std::isfinite(rep.upper_max) ? 1.0 : -1.0, 0.0);
        for (const auto& pt : rep.points) {
            out.csv_rows.push_back({name, std::to_string(pt.l), format_double(pt.lambda),
                                    format_double(pt.r), "", format_double(pt.lower_ratio),
                                    format_double(pt.upper_ratio),
                                    format_double(std::min(pt.lower_ratio, pt.upper_ratio)),
                                    format_double(rep.lower_min),
                                    format_double(rep.upper_max)});
            ++out.cases;
        }
    }
    out.report["bases"] = bases;
    return out;
}

double stability_ratio(double a, double b, double floor) {
    double hi = std::max({a, b, floor});
    double lo = std::max(std::min(a, b), floor);
    return hi / lo;
}

SuiteOutcome run_growth(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"base", "l", "lambda", "r", "s", "lhs", "rhs", "margin",
                      "fitted_C1", "fitted_C2"};
    json bases = json::object();
    int lhalf = std::max(cfg.lmin + 1, cfg.lmax / 2);
    for (BaseManifold base : {BaseManifold::Circle, BaseManifold::Sphere2}) {
        std::string name = base == BaseManifold::Circle ? "circle" : "sphere2_zonal";
        FittedConstants half = fit_growth_constants(base, cfg.lmin, lhalf, cfg.r, cfg.s);
        FittedConstants full = fit_growth_constants(base, cfg.lmin, cfg.lmax, cfg.r, cfg.s);
        GrowthIndices remark{1.5, 1.0, 3.0, 1.0};
        FittedConstants beta =
            fit_growth_constants(base, cfg.lmin, cfg.lmax, cfg.r, cfg.s, remark);
        double rc1 = stability_ratio(half.C1, full.C1, 1.0);
        double rc2 = stability_ratio(half.C2, full.C2, 0.1);
        json b;
        b["C1_half"] = half.C1;
        b["C2_half"] = half.C2;
        b["C1_full"] = full.C1;
        b["C2_full"] = full.C2;
        b["C1_remark"] = beta.C1;
        b["C2_remark"] = beta.C2;
        b["C1_stability"] = rc1;
        b["C2_stability"] = rc2;
        bases[name] = b;
        out.add_margin(4.0 - rc1, 0.0);
        out.add_margin(4.0 - rc2, 0.0);
        out.add_margin(std::isfinite(beta.C1) ? 1.0 : -1.0, 0.0);
        out.cases += 3;
        out.csv_rows.push_back({name, std::to_string(lhalf), "", format_double(cfg.r),
                                format_double(cfg.s), "", "", "", format_double(half.C1),
                                format_double(half.C2)});
        out.csv_rows.push_back({name, std::to_string(cfg.lmax), "", format_double(cfg.r),
                                format_double(cfg.s), "", "", "", format_double(full.C1),
                                format_double(full.C2)});
    }
    out.report["bases"] = bases;
    return out;
}

SuiteOutcome run_chain(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"base", "l", "lambda", "r", "s", "lhs", "rhs", "margin",
                      "fitted_C1", "fitted_C2"};
    FittedConstants fit =
        fit_growth_constants(BaseManifold::Sphere2, cfg.lmin, std::min(cfg.lmax, 10),
                             cfg.r0, cfg.r0);
    int lsweep_hi = std::max(cfg.lmin, std::min(cfg.lmax, 14));
    std::vector<double> xs, ys;
    for (int l = std::max(2, cfg.lmin); l <= lsweep_hi; ++l) {
        Eigenfunction u = Eigenfunction::zonal(l);
        BallChain chain = chain_lower_bound(u, {0.0, 0.0, -1.0}, cfg.r0, fit);
        double margin = std::log(chain.measured) - chain.log_bound;
        out.add_margin(margin, 1e-12);
        if (!chain.sound) out.pass = false;
        xs.push_back(std::sqrt(u.lambda()));
        ys.push_back(-chain.log_bound);
        out.csv_rows.push_back({"sphere2_zonal", std::to_string(l), format_double(u.lambda()),
                                format_double(cfg.r0), "", format_double(chain.log_bound),
                                format_double(std::log(chain.measured)),
                                format_double(margin), format_double(fit.C1),
                                format_double(fit.C2)});
        ++out.cases;
    }
    // regression of log(1/bound) against sqrt(lambda)
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    out.report["regression"] = {{"slope", slope}, {"r2", r2}};
    out.report["fit"] = {{"C1", fit.C1}, {"C2", fit.C2}};
    out.add_margin(std::isfinite(slope) ? 1.0 : -1.0, 0.0);
    return out;
}

SuiteOutcome run_df(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"base", "l", "lambda", "r", "s", "lhs", "rhs", "margin",
                      "fitted_C1", "fitted_C2"};
    json bases = json::object();
    for (BaseManifold base : {BaseManifold::Circle, BaseManifold::Sphere2}) {
        std::string name = base == BaseManifold::Circle ? "circle" : "sphere2_zonal";
        double sup_half = df_growth_sup(base, cfg.r, std::max(cfg.lmin, cfg.lmax / 2));
        double sup_full = df_growth_sup(base, cfg.r, cfg.lmax);
        double ratio = stability_ratio(sup_half, sup_full, 1e-9);
        json b;
        b["sup_half"] = sup_half;
        b["sup_full"] = sup_full;
        b["stability"] = ratio;
        bases[name] = b;
        out.add_margin(2.0 - ratio, 0.0);
        ++out.cases;
        out.csv_rows.push_back({name, std::to_string(cfg.lmax), "", format_double(cfg.r), "",
                                format_double(sup_half), format_double(sup_full),
                                format_double(2.0 - ratio), "", ""});
    }
    out.report["bases"] = bases;
    return out;
}

SuiteOutcome run_nodal(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"l", "lambda", "length", "length_over_sqrt_lambda"};
    const std::vector<int> sectoral_degrees{1, 2, 4, 8, 16};
    json sect = json::array();
    std::vector<NodalTrace> traces(sectoral_degrees.size());
    parallel_for(sectoral_degrees.size(), [&](std::size_t i) {
        int l = sectoral_degrees[i];
        auto u = [l](double th, double ph) {
            return std::pow(std::sin(th), l) * std::cos(l * ph);
        };
        traces[i] = trace_nodal(u, l, std::max(8, 16 * l));
    });
    for (std::size_t i = 0; i < traces.size(); ++i) {
        int l = sectoral_degrees[i];
        double expect = 2.0 * kPi * l;
        double rel = std::abs(traces[i].length - expect) / expect;
        out.add_margin(0.01 - rel, 0.0);
        ++out.cases;
        sect.push_back({{"l", l},
                        {"length", traces[i].length},
                        {"relative_error", rel}});
        out.csv_rows.push_back({std::to_string(l), format_double(traces[i].lambda),
                                format_double(traces[i].length),
                                format_double(traces[i].length / std::sqrt(traces[i].lambda))});
    }

    std::vector<int> degrees;
    for (int l = std::max(4, cfg.lmin); l <= std::max(std::max(4, cfg.lmin) + 1, cfg.lmax); ++l)
        degrees.push_back(l);
    YauFit fit = yau_scaling_fit(degrees, cfg.seed);
    for (const auto& row : fit.rows) {
        out.csv_rows.push_back({std::to_string(row.l), format_double(row.lambda),
                                format_double(row.length),
                                format_double(row.length_over_sqrt_lambda)});
        ++out.cases;
    }
    out.add_margin(fit.slope - 0.85, 0.0);
    out.add_margin(1.15 - fit.slope, 0.0);
    out.report["sectoral"] = sect;
    out.report["fit"] = {{"slope", fit.slope},
                         {"intercept", fit.intercept},
                         {"C1", fit.c1},
                         {"C2", fit.c2}};

    if (cfg.plots) {
        write_trace_svg(traces[3], cfg.out + "/nodal_sectoral_8.svg");
        RandomHarmonic h = random_harmonic(12, Rng::sub_seed(cfg.seed, 12));
        NodalTrace rt = trace_nodal([&](double th, double ph) { return h.eval(th, ph); }, 12,
                                    16 * 12);
        write_trace_svg(rt, cfg.out + "/nodal_random_12.svg");
    }
    return out;
}

SuiteOutcome run_lemma54(const ExperimentConfig& cfg) {
    SuiteOutcome out;
    out.csv_header = {"part", "x", "value", "margin_lower", "margin_upper"};
    const int grid_points = 10000;
    const double trig_hi = (kPi / 2.0) * (kPi / 2.0);
    const double hyp_hi = 40.0;
    const double slack = 1e-9;
    json parts = json::object();

    const struct {
        CotBound part;
        const char* name;
        double hi;
    } specs[] = {
        {CotBound::SqrtCot, "sqrt_cot", trig_hi},
        {CotBound::SqrtCoth, "sqrt_coth", hyp_hi},
        {CotBound::XCot2, "x_cot2", trig_hi},
        {CotBound::XCoth2, "x_coth2", hyp_hi},
    };
    for (const auto& spec : specs) {
        auto range = cot_bound_range(spec.part);
        double worst_lower = std::numeric_limits<double>::infinity();
        double worst_upper = std::numeric_limits<double>::infinity();
        double min_v = std::numeric_limits<double>::infinity(), max_v = -min_v;
        for (int i = 0; i < grid_points; ++i) {
            double x = spec.hi * i / grid_points;
            double v = cot_bound_derivative(spec.part, x);
            min_v = std::min(min_v, v);
            max_v = std::max(max_v, v);
            worst_lower = std::min(worst_lower, v - range[0]);
            worst_upper = std::min(worst_upper, range[1] - v);
            if (i % 500 == 0)
                out.csv_rows.push_back({spec.name, format_double(x), format_double(v),
                                        format_double(v - range[0]),
                                        format_double(range[1] - v)});
        }
        out.add_margin(worst_lower, slack);
        out.add_margin(worst_upper, slack);
        out.cases += grid_points;
        parts[spec.name] = {{"min", min_v},
                            {"max", max_v},
                            {"bound_lower", range[0]},
                            {"bound_upper", range[1]},
                            {"worst_lower_margin", worst_lower},
                            {"worst_upper_margin", worst_upper}};
    }
    // series limits at the origin
    double lim_i = cot_bound_derivative(CotBound::SqrtCot, 0.0);
    double lim_ii = cot_bound_derivative(CotBound::SqrtCoth, 0.0);
    out.add_margin(1e-6 - std::abs(lim_i + 1.0 / 3.0), 0.0);
    out.add_margin(1e-6 - std::abs(lim_ii - 1.0 / 3.0), 0.0);
    parts["limits"] = {{"sqrt_cot_at_0", lim_i}, {"sqrt_coth_at_0", lim_ii}};
    out.report["parts"] = parts;
    return out;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg) {
    try {
        std::filesystem::create_directories(cfg.out);
        SuiteOutcome out;
        if (cfg.suite == "convexity") out = run_convexity(cfg);
        else if (cfg.suite == "doubling") out = run_doubling(cfg);
        else if (cfg.suite == "sandwich") out = run_sandwich(cfg);
        else if (cfg.suite == "growth") out = run_growth(cfg);
        else if (cfg.suite == "chain") out = run_chain(cfg);
        else if (cfg.suite == "df") out = run_df(cfg);
        else if (cfg.suite == "nodal") out = run_nodal(cfg);
        else if (cfg.suite == "lemma54") out = run_lemma54(cfg);
        else throw ConfigError("unknown suite '" + cfg.suite + "'");

        out.report["suite"] = cfg.suite;
        out.report["seed"] = cfg.seed;
        out.report["cases"] = out.cases;
        out.report["worst_margin"] = out.worst_margin;
        out.report["pass"] = out.pass;
        out.report["params"] = params_echo(cfg);
        write_text_file(cfg.out + "/" + cfg.suite + ".json", out.report.dump(2) + "\n");
        if (!out.csv_rows.empty() || !out.csv_header.empty())
            write_csv(cfg.out + "/" + cfg.suite + ".csv", out.csv_header, out.csv_rows);
        return out.pass ? kExitOk : kExitMarginViolation;
    } catch (const ConfigError&) {
        return kExitConfigError;
    } catch (const DomainError&) {
        return kExitConfigError;
    } catch (const SolverError&) {
        return kExitSolverFailure;
    }
}

int summarize_reports(const std::string& dir, std::ostream& os) {
    namespace fs = std::filesystem;
    std::vector<json> reports;
    if (fs::is_directory(dir)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            std::ifstream in(p, std::ios::binary);
            json j = json::parse(in, nullptr, false);
            if (j.is_discarded() || !j.contains("suite")) continue;
            reports.push_back(std::move(j));
        }
    }
    if (reports.empty()) return kExitConfigError;
    std::sort(reports.begin(), reports.end(), [](const json& a, const json& b) {
        return a["suite"].get<std::string>() < b["suite"].get<std::string>();
    });
    os << "suite        seed                  cases   worst_margin       pass\n";
    for (const json& j : reports) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-12s %-21llu %-7d %-18.6g %s\n",
                      j["suite"].get<std::string>().c_str(),
                      static_cast<unsigned long long>(j["seed"].get<std::uint64_t>()),
                      j["cases"].get<int>(), j["worst_margin"].get<double>(),
                      j["pass"].get<bool>() ? "yes" : "no");
        os << line;
    }
    return kExitOk;
}

} // namespace curvelab
