#include "hurst/cli.hpp"

#include "hurst/diagnostics.hpp"
#include "hurst/dyadic.hpp"
#include "hurst/error.hpp"
#include "hurst/fbm.hpp"
#include "hurst/io.hpp"
#include "hurst/rolling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef HURST_VERSION
#define HURST_VERSION "0.0.0"
#endif

namespace hurst {

using nlohmann::json;

namespace {

double to_double(const std::string& s) {
    std::string_view v = s;
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
        throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

} // namespace

WeightProfile parse_alpha(const std::string& spec, int m) {
    if (spec == "uniform") {
        if (m < 0) throw Error(ErrorCode::InvalidArgument, "alpha 'uniform' needs --m");
        return WeightProfile::uniform(m);
    }
    if (spec.rfind("geometric:", 0) == 0) {
        if (m < 0) throw Error(ErrorCode::InvalidArgument, "alpha 'geometric:r' needs --m");
        return WeightProfile::geometric(m, to_double(spec.substr(10)));
    }
    std::vector<double> alpha;
    for (const auto& item : split_list(spec)) alpha.push_back(to_double(item));
    if (alpha.empty()) throw Error(ErrorCode::InvalidProfile, "empty alpha list");
    if (m >= 0 && static_cast<int>(alpha.size()) != m + 1) {
        throw Error(ErrorCode::InvalidProfile, "alpha list has " + std::to_string(alpha.size()) +
                                                   " entries but m = " + std::to_string(m));
    }
    return WeightProfile::make(std::move(alpha));
}

std::vector<double> parse_h_range(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        std::vector<double> out;
        for (const auto& item : split_list(spec)) out.push_back(to_double(item));
        if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty H list");
        return out;
    }
    const auto colon = spec.find(':', dots);
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "H range needs a step: lo..hi:step");
    const double lo = to_double(spec.substr(0, dots));
    const double hi = to_double(spec.substr(dots + 2, colon - dots - 2));
    const double step = to_double(spec.substr(colon + 1));
    if (!(step > 0.0) || hi < lo) throw Error(ErrorCode::InvalidArgument, "H range must have lo <= hi and step > 0");
    const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (long long i = 0; i < count; ++i) {
        // Round to 12 decimals so 0.1..0.9:0.1 yields 0.3 rather than 0.30000000000000004.
        out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
}

namespace {

struct IngestFlags {
    std::string input;
    std::string time_col;
    std::string value_col;
    std::string length;
    std::string transform = "none";
    std::string detrend = "none";

    void attach(CLI::App* cmd, const std::string& default_length) {
        length = default_length;
        cmd->add_option("--input,-i", input, "CSV file ('-' for stdin)")->required();
        cmd->add_option("--time-col", time_col, "Timestamp column (name or 0-based index)");
        cmd->add_option("--value-col", value_col, "Value column (name or 0-based index; default last)");
        cmd->add_option("--length-policy", length, "require_dyadic | truncate_head | truncate_tail | keep_all")
            ->capture_default_str();
        cmd->add_option("--transform", transform, "none | log")->capture_default_str();
        cmd->add_option("--detrend", detrend, "none | affine")->capture_default_str();
    }

    [[nodiscard]] IngestPolicy policy() const {
        return IngestPolicy{time_col, value_col, parse_length_policy(length), parse_transform(transform),
                            parse_detrend(detrend)};
    }
};

json policy_json(const IngestPolicy& p) {
    return {{"time_col", p.time_col},
            {"value_col", p.value_col},
            {"length", to_string(p.length)},
            {"transform", to_string(p.transform)},
            {"detrend", to_string(p.detrend)}};
}

json ingest_json(const IngestResult& r) {
    return {{"policy", policy_json(r.policy)},
            {"rows_read", r.rows_read},
            {"rows_dropped", r.rows_dropped},
            {"samples", r.values.size()},
            {"had_header", r.had_header}};
}

json profile_json(const WeightProfile& p) {
    return json(std::vector<double>(p.alpha().begin(), p.alpha().end()));
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json estimate_json(const ScaleEstimate& e) {
    json j{{"kind", std::string(to_string(e.kind))},
           {"n", e.n},
           {"H", e.H},
           {"log2_lambda", e.log2_lambda},
           {"first_index", e.first_index},
           {"weights", e.weights}};
    if (e.kind != EstimatorKind::Gladyshev && e.kind != EstimatorKind::SimpleRegression) {
        j["profile"] = profile_json(e.profile);
        j["profile_normalized"] = e.profile_normalized;
    }
    return j;
}

json envelope(const std::string& command) {
    return {{"command", command},
            {"config", json::object({{"version", HURST_VERSION}})},
            {"results", json::array()},
            {"diagnostics", json::array()},
            {"warnings", json::array()},
            {"seed", nullptr}};
}

/// Resolution to analyze: --n if given (>0), else the full input resolution.
int pick_level(int requested, const DyadicSeries& series) {
    if (requested <= 0) return series.resolution();
    if (requested > series.resolution()) {
        throw Error(ErrorCode::LevelExceedsResolution, "n = " + std::to_string(requested) +
                                                           " exceeds input resolution " +
                                                           std::to_string(series.resolution()));
    }
    return requested;
}

std::vector<long long> default_lags(int m) {
    std::vector<long long> K;
    for (int i = 0; i <= std::max(m, 1); ++i) K.push_back(1LL << i);
    return K;
}

std::vector<long long> parse_lags(const std::string& s) {
    std::vector<long long> K;
    for (const auto& item : split_list(s)) {
        const double v = to_double(item);
        if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, "lag '" + item + "' is not an integer");
        K.push_back(static_cast<long long>(v));
    }
    return K;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(to_double(item));
    return out;
}

/// Shortest representation that round-trips.
std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty() || output == "-") {
        out << text;
        return;
    }
    std::ofstream file(output);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + output + "'");
    file << text;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hurst roughness exponent toolkit", "hurst"};
    app.set_version_flag("--version", HURST_VERSION);
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1, 1);

    std::string output;
    std::string format = "json";
    app.add_option("--output,-o", output, "Write the report to this file instead of stdout");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Faber-Schauder coefficients and energy trace");
    IngestFlags analyze_in;
    analyze_in.attach(analyze, "require_dyadic");
    int analyze_n = 0;
    bool analyze_coeffs = false;
    analyze->add_option("--n", analyze_n, "Resolution (default: full input)");
    analyze->add_flag("--coefficients", analyze_coeffs, "Include every theta_{m,k}");

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate H on one window");
    IngestFlags est_in;
    est_in.attach(est, "require_dyadic");
    std::string est_kind = "terminal";
    int est_n = 0;
    int est_m = -1;
    std::string est_alpha = "uniform";
    std::string est_K;
    std::string est_Q = "2";
    est->add_option("--kind", est_kind, "gladyshev | sequential | terminal | regression | simple_regression")
        ->capture_default_str();
    est->add_option("--n", est_n, "Resolution (default: full input)");
    est->add_option("--m", est_m, "Number of profile terms minus one (default 1)");
    est->add_option("--alpha", est_alpha, "uniform | geometric:r | a0,a1,...")->capture_default_str();
    est->add_option("--K", est_K, "Simple regression lags (default 1,2,..,2^m)");
    est->add_option("--Q", est_Q, "Simple regression exponents")->capture_default_str();

    // roll
    auto* roll = app.add_subcommand("roll", "Rolling T-adjusted monitor");
    IngestFlags roll_in;
    roll_in.attach(roll, "keep_all");
    std::string roll_kind = "terminal";
    int roll_n = 11;
    int roll_m = 1;
    std::string roll_alpha = "uniform";
    std::size_t roll_stride = 1;
    std::size_t roll_max = std::size_t{1} << 20;
    roll->add_option("--kind", roll_kind, "sequential | terminal")->capture_default_str();
    roll->add_option("--n", roll_n, "Window resolution")->capture_default_str();
    roll->add_option("--m", roll_m, "Number of profile terms minus one")->capture_default_str();
    roll->add_option("--alpha", roll_alpha, "uniform | geometric:r | a0,a1,...")->capture_default_str();
    roll->add_option("--stride", roll_stride, "Samples between window starts")->capture_default_str();
    roll->add_option("--max-windows", roll_max, "Cap on the number of windows")->capture_default_str();
    roll->add_option("--format", format, "json | csv")->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo study on simulated fBm");
    std::vector<std::string> sim_kinds{"gladyshev"};
    int sim_n = 12;
    std::string sim_H = "0.5";
    std::size_t sim_paths = 1000;
    std::uint64_t sim_seed = 1;
    int sim_m = 1;
    std::string sim_alpha = "uniform";
    std::string sim_K;
    std::string sim_Q = "2";
    bool sim_standardize = false;
    std::size_t sim_threads = 0;
    std::string sim_format = "csv";
    sim->add_option("--estimator", sim_kinds, "Estimator kind (repeatable)")->capture_default_str();
    sim->add_option("--n", sim_n, "Path resolution")->capture_default_str();
    sim->add_option("--H", sim_H, "lo..hi:step, list or value")->capture_default_str();
    sim->add_option("--paths", sim_paths, "Paths per H")->capture_default_str();
    sim->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
    sim->add_option("--m", sim_m, "Number of profile terms minus one")->capture_default_str();
    sim->add_option("--alpha", sim_alpha, "uniform | geometric:r | a0,a1,...")->capture_default_str();
    sim->add_option("--K", sim_K, "Simple regression lags (default 1,2,..,2^m)");
    sim->add_option("--Q", sim_Q, "Simple regression exponents")->capture_default_str();
    sim->add_flag("--standardize", sim_standardize, "Rescale each path to mean 0, variance 1");
    sim->add_option("--threads", sim_threads, "Worker threads (0: HURST_THREADS or all cores)");
    sim->add_option("--format", sim_format, "csv | json")->capture_default_str();

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "Reverse Jensen, regularity and bias diagnostics");
    IngestFlags diag_in;
    diag_in.attach(diag, "require_dyadic");
    std::string diag_p = "1,3,4";
    int diag_nu = 2;
    std::optional<double> diag_H;
    int diag_branch = 20;
    double diag_tol = 0.01;
    diag->add_option("--p", diag_p, "Exponents for the reverse Jensen curve")->capture_default_str();
    diag->add_option("--nu", diag_nu, "Block exponent")->capture_default_str();
    diag->add_option("--H", diag_H, "Candidate exponent for the bias check");
    diag->add_option("--max-branch-n", diag_branch, "Deepest level for branch moments")->capture_default_str();
    diag->add_option("--bias-tol", diag_tol, "Tolerance of the bias check")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        app.exit(e, err, err);
        err << app.help();
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) {
            const auto data = ingest_csv(analyze_in.input, analyze_in.policy());
            const auto full = data.series();
            const int n = pick_level(analyze_n, full);
            const auto series = full.coarsened(n);
            const auto pyramid = fs_analyze(series);
            const auto trace = energy_trace(pyramid);

            json report = envelope("analyze");
            report["config"]["input"] = analyze_in.input;
            report["config"]["ingest"] = ingest_json(data);
            report["config"]["n"] = n;
            json levels = json::array();
            for (int j = 1; j <= trace.depth(); ++j) {
                const auto xi = trace.xi(j);
                levels.push_back({{"j", j},
                                  {"s", trace.s(j)},
                                  {"xi", optional_json(xi)},
                                  {"H", xi ? json(1.0 - *xi) : json(nullptr)}});
            }
            json result{{"n", n}, {"x0", pyramid.x0()}, {"slope", pyramid.slope()}, {"levels", levels}};
            if (analyze_coeffs) {
                json coeffs = json::array();
                for (int m = 0; m < pyramid.depth(); ++m) {
                    const auto lv = pyramid.level(m);
                    coeffs.push_back(std::vector<double>(lv.begin(), lv.end()));
                }
                result["theta"] = coeffs;
            }
            report["results"].push_back(result);
            emit(report.dump(2) + "\n", output, out);
            return kExitOk;
        }

        if (est->parsed()) {
            const auto data = ingest_csv(est_in.input, est_in.policy());
            const auto full = data.series();
            const int n = pick_level(est_n, full);
            const auto kind = parse_estimator_kind(est_kind);

            json report = envelope("estimate");
            report["config"]["input"] = est_in.input;
            report["config"]["ingest"] = ingest_json(data);
            report["config"]["kind"] = est_kind;
            report["config"]["n"] = n;

            ScaleEstimate e;
            if (kind == EstimatorKind::SimpleRegression) {
                const auto K = est_K.empty() ? default_lags(est_m) : parse_lags(est_K);
                const auto Q = parse_doubles(est_Q);
                report["config"]["K"] = K;
                report["config"]["Q"] = Q;
                e = simple_regression(full, n, K, Q);
            } else if (kind == EstimatorKind::Gladyshev) {
                e = estimate(kind, full, n, WeightProfile::uniform(0));
            } else {
                // Named generators default to one lag term; explicit lists fix m themselves.
                const bool named = est_alpha.rfind("uniform", 0) == 0 || est_alpha.rfind("geometric", 0) == 0;
                const auto profile = parse_alpha(est_alpha, est_m < 0 && named ? 1 : est_m);
                report["config"]["m"] = profile.m();
                report["config"]["alpha"] = profile_json(profile);
                e = estimate(kind, full, n, profile);
            }
            if (e.profile_normalized) report["warnings"].push_back("regression profile rescaled to sum to one");
            report["results"].push_back(estimate_json(e));
            emit(report.dump(2) + "\n", output, out);
            return kExitOk;
        }

        if (roll->parsed()) {
            const auto data = ingest_csv(roll_in.input, roll_in.policy());
            const auto kind = parse_estimator_kind(roll_kind);
            const auto profile = parse_alpha(roll_alpha, roll_m);
            MonitorOptions opts;
            opts.max_windows = roll_max;
            const auto rep = rolling_monitor(data.values, roll_n, roll_stride, profile, kind, opts);
            const std::size_t len = rep.grid.window_length();

            if (format == "csv") {
                std::ostringstream os;
                os << "offset," << (data.timestamps.empty() ? "" : "time_start,time_end,")
                   << "skipped,gladyshev,log2_lambda,raw,adjusted\n";
                for (const auto& w : rep.windows) {
                    os << w.offset << ',';
                    if (!data.timestamps.empty()) {
                        os << data.timestamps[w.offset] << ',' << data.timestamps[w.offset + len - 1] << ',';
                    }
                    os << (w.skipped ? 1 : 0) << ',';
                    if (w.skipped) {
                        os << ",,,\n";
                    } else {
                        os << format_double(w.gladyshev) << ',' << format_double(w.log2_lambda) << ','
                           << format_double(w.raw) << ',' << format_double(w.adjusted) << '\n';
                    }
                }
                for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
                emit(os.str(), output, out);
                return kExitOk;
            }
            if (format != "json") throw Error(ErrorCode::InvalidArgument, "unknown format '" + format + "'");

            json report = envelope("roll");
            report["config"]["input"] = roll_in.input;
            report["config"]["ingest"] = ingest_json(data);
            report["config"]["kind"] = roll_kind;
            report["config"]["n"] = roll_n;
            report["config"]["m"] = profile.m();
            report["config"]["alpha"] = profile_json(profile);
            report["config"]["stride"] = rep.grid.stride();
            for (const auto& w : rep.windows) {
                json row{{"offset", w.offset}, {"skipped", w.skipped}};
                if (!data.timestamps.empty()) {
                    row["time_start"] = data.timestamps[w.offset];
                    row["time_end"] = data.timestamps[w.offset + len - 1];
                }
                if (w.skipped) {
                    row["diagnostic"] = w.diagnostic;
                } else {
                    row["gladyshev"] = w.gladyshev;
                    row["log2_lambda"] = w.log2_lambda;
                    row["raw"] = w.raw;
                    row["adjusted"] = w.adjusted;
                }
                report["results"].push_back(row);
            }
            report["diagnostics"].push_back({{"shared_log2_lambda", rep.shared_log2_lambda},
                                             {"pooled_log2_lambda", rep.pooled_log2_lambda},
                                             {"windows", rep.windows.size()},
                                             {"skipped", rep.skipped}});
            for (const auto& w : rep.warnings) report["warnings"].push_back(w);
            emit(report.dump(2) + "\n", output, out);
            return kExitOk;
        }

        if (sim->parsed()) {
            const auto H_list = parse_h_range(sim_H);
            std::vector<EstimatorConfig> configs;
            for (const auto& name : sim_kinds) {
                EstimatorConfig c;
                c.kind = parse_estimator_kind(name);
                c.standardize = sim_standardize;
                if (c.kind == EstimatorKind::SimpleRegression) {
                    c.K = sim_K.empty() ? default_lags(sim_m) : parse_lags(sim_K);
                    c.Q = parse_doubles(sim_Q);
                } else if (c.kind != EstimatorKind::Gladyshev) {
                    c.profile = parse_alpha(sim_alpha, sim_m);
                }
                configs.push_back(std::move(c));
            }
            const auto rows = monte_carlo(configs, H_list, sim_paths, sim_n, sim_seed, {sim_threads});

            if (sim_format == "csv") {
                std::ostringstream os;
                const bool several = configs.size() > 1;
                os << (several ? "estimator," : "") << "H_true,mean,sd,max,min,paths,failures\n";
                for (const auto& r : rows) {
                    if (several) os << describe(r.config) << ',';
                    os << format_double(r.H_true) << ',' << format_double(r.mean) << ',' << format_double(r.sd)
                       << ',' << format_double(r.max) << ',' << format_double(r.min) << ',' << r.paths << ','
                       << r.failures << '\n';
                }
                emit(os.str(), output, out);
                return kExitOk;
            }
            if (sim_format != "json") throw Error(ErrorCode::InvalidArgument, "unknown format '" + sim_format + "'");

            json report = envelope("simulate");
            report["seed"] = sim_seed;
            report["config"]["n"] = sim_n;
            report["config"]["H"] = H_list;
            report["config"]["paths"] = sim_paths;
            report["config"]["standardize"] = sim_standardize;
            json est_list = json::array();
            for (const auto& c : configs) est_list.push_back(describe(c));
            report["config"]["estimators"] = est_list;
            for (const auto& r : rows) {
                report["results"].push_back({{"estimator", describe(r.config)},
                                             {"n", r.n},
                                             {"H_true", r.H_true},
                                             {"mean", r.mean},
                                             {"sd", r.sd},
                                             {"max", r.max},
                                             {"min", r.min},
                                             {"paths", r.paths},
                                             {"failures", r.failures}});
                if (r.failures > 0) {
                    report["diagnostics"].push_back(
                        {{"estimator", describe(r.config)}, {"H_true", r.H_true}, {"failure_log", r.failure_log}});
                }
            }
            emit(report.dump(2) + "\n", output, out);
            return kExitOk;
        }

        if (diag->parsed()) {
            const auto data = ingest_csv(diag_in.input, diag_in.policy());
            const auto pyramid = fs_analyze(data.series());
            DiagnosticOptions opts;
            opts.p_grid = parse_doubles(diag_p);
            opts.nu = diag_nu;
            opts.H_candidate = diag_H;
            opts.max_branch_n = diag_branch;
            opts.bias_tol = diag_tol;
            const auto rep = diagnose(pyramid, opts);

            json report = envelope("diagnose");
            report["config"]["input"] = diag_in.input;
            report["config"]["ingest"] = ingest_json(data);
            report["config"]["p"] = opts.p_grid;
            report["config"]["nu"] = opts.nu;
            report["config"]["H_candidate"] = optional_json(opts.H_candidate);

            json rj = json::array();
            for (std::size_t i = 0; i < rep.reverse_jensen.size(); ++i) {
                json curve = json::array();
                for (const auto& pt : rep.reverse_jensen[i]) {
                    curve.push_back({{"n", pt.n},
                                     {"moment", pt.moment},
                                     {"s_pow", pt.s_pow},
                                     {"ratio", pt.ratio},
                                     {"log2_rate", pt.log2_rate}});
                }
                rj.push_back({{"p", opts.p_grid[i]}, {"curve", curve}});
            }
            auto ratio_json = [](const BoundedRatio& r) { return r.infinite ? json("inf") : json(r.value); };
            json cond_a = json::array();
            json cond_b = json::array();
            for (std::size_t m = 0; m < rep.condition_a.size(); ++m) {
                cond_a.push_back(ratio_json(rep.condition_a[m]));
                cond_b.push_back(rep.condition_b[m] ? ratio_json(*rep.condition_b[m]) : json(nullptr));
            }
            json result{{"depth", rep.depth},
                        {"reverse_jensen", rj},
                        {"condition_a", cond_a},
                        {"condition_b", cond_b}};
            if (rep.quantiles) {
                result["quantile_bounds"] = {{"lower", rep.quantiles->lower},
                                             {"upper", rep.quantiles->upper},
                                             {"first_level", rep.quantiles->first_level},
                                             {"convention", rep.quantiles->quantile_convention}};
            }
            if (rep.bias) {
                json checks = json::array();
                for (const auto& c : rep.bias->checks) {
                    checks.push_back(
                        {{"rule", c.rule}, {"verdict", to_string(c.verdict)}, {"margin", optional_json(c.margin)}});
                }
                result["bias"] = {{"H_candidate", rep.bias->H_candidate},
                                  {"xi", optional_json(rep.bias->xi)},
                                  {"n", rep.bias->n},
                                  {"checks", checks}};
            }
            json incs = json::array();
            for (const auto& v : rep.bv.log2_increments) incs.push_back(optional_json(v));
            result["bv"] = {{"sup_s", rep.bv.sup_s},
                            {"log2_increments", incs},
                            {"log2_slope", optional_json(rep.bv.log2_slope)},
                            {"slope_lo", rep.bv.slope_lo},
                            {"slope_hi", rep.bv.slope_hi}};
            report["results"].push_back(result);
            for (const auto& note : rep.notes) report["diagnostics"].push_back(note);
            emit(report.dump(2) + "\n", output, out);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.code()) ? kExitNumerical : kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}

int run_command(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_command(args, std::cout, std::cerr);
}

} // namespace hurst
