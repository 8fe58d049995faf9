#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "giant/giant.hpp"

namespace giant::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kNoConvergence = 3;

struct Options {
    std::string config;
    std::string output;
    std::string format;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool error_json = false;

    std::string pmf;
    std::string pmf_file;
    std::string prefix;
    double mu = 0.0;

    std::string Ls = "2,3,4,5";
    double mu_lo = 1.0;
    double mu_hi = 5.0;
    double mu_step = 0.2;
    double step = 0.05;
    std::string figure3;

    std::string which;
    double control_step = 0.01;

    std::size_t n = 0;
    int reps = 1;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, "bad integer '" + item + "'");
        }
    }
    return out;
}

/// Turns a JSON object into "--key value" arguments. Booleans become bare
/// flags when true; arrays are joined with commas.
inline std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::InvalidInput, "cannot open config file " + path);
    }
    nlohmann::json config;
    try {
        in >> config;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("config file: ") + e.what());
    }
    if (!config.is_object()) {
        throw Error(Errc::ParseError, "config file must hold a JSON object");
    }
    const auto scalar = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    std::vector<std::string> args;
    for (const auto& [key, value] : config.items()) {
        if (key == "config") continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty()) joined += ',';
                joined += scalar(item);
            }
            args.push_back(joined);
        } else {
            args.push_back(scalar(value));
        }
    }
    return args;
}

/// Config-file arguments go right after the subcommand so that explicit
/// flags, parsed later, win.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config") {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            continue;
        }
        auto extra = config_arguments(path);
        args.insert(args.begin() + 1, extra.begin(), extra.end());
        break;
    }
    return args;
}

inline DegreePMF load_pmf(const Options& opt) {
    if (!opt.pmf.empty()) {
        return parse_pmf_inline(opt.pmf, "inline");
    }
    std::ifstream in(opt.pmf_file);
    if (!in) {
        throw Error(Errc::InvalidInput, "cannot open pmf file " + opt.pmf_file);
    }
    if (opt.pmf_file.size() >= 5 && opt.pmf_file.ends_with(".json")) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::ParseError, std::string("pmf json: ") + e.what());
        }
        return j.get<DegreePMF>();
    }
    return parse_pmf_text(in, opt.pmf_file);
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void require_format(const std::string& format) {
    if (format != "json" && format != "csv") {
        throw Error(Errc::InvalidInput, "format must be json or csv");
    }
}

} // namespace detail

inline std::string cmd_solve(const Options& opt) {
    const DegreePMF pmf = detail::load_pmf(opt);
    const GiantSummary s = giant_summary(pmf);
    if (opt.format == "csv") {
        return "mu,nu,z_tilde,xi\n" + fixed(s.mu, 6) + ',' + fixed(s.nu, 6) + ',' + fixed(s.z_tilde, 6) +
               ',' + fixed(s.xi, 6) + '\n';
    }
    nlohmann::json j{{"mu", round_to(s.mu, 6)},
                     {"nu", round_to(s.nu, 6)},
                     {"z_tilde", round_to(s.z_tilde, 6)},
                     {"xi", round_to(s.xi, 6)}};
    if (s.near_critical) j["near_critical"] = true;
    return detail::dump(j);
}

inline std::string cmd_bounds(const Options& opt) {
    const BoundsReport r = bounds_report(parse_prefix(opt.prefix), opt.mu);
    if (opt.format == "csv") {
        return bounds_csv_header() + bounds_csv_row(r);
    }
    return detail::dump(nlohmann::json(r));
}

inline std::string cmd_table1(const Options& opt) {
    std::vector<BoundsReport> reports;
    for (const auto& c : table1_cases()) reports.push_back(bounds_report(c.prefix, c.mu));
    if (opt.format == "json") {
        return detail::dump(nlohmann::json(reports));
    }
    std::string out = bounds_csv_header();
    for (const auto& r : reports) out += bounds_csv_row(r);
    return out;
}

/// Returns the main output; the Figure-3 data goes to opt.figure3 if set.
inline std::string cmd_maxgap(const Options& opt) {
    MaxGapConfig config;
    config.Ls = detail::parse_int_list(opt.Ls);
    config.mu_lo = opt.mu_lo;
    config.mu_hi = opt.mu_hi;
    config.mu_step = opt.mu_step;
    config.prefix_step = opt.step;
    config.threads = opt.threads;
    const MaxGapResult result = max_gap_search(config);
    if (!opt.figure3.empty()) {
        std::ofstream fig(opt.figure3, std::ios::binary);
        if (!fig) throw Error(Errc::InvalidInput, "cannot write " + opt.figure3);
        fig << figure3_csv(result);
    }
    if (opt.format == "json") {
        return detail::dump(nlohmann::json(result));
    }
    return table2_csv(result);
}

inline std::string cmd_figures(const Options& opt, std::ostream& err) {
    const auto sweeps = figure_sweeps(opt.which, opt.control_step);
    for (const auto& [name, sweep] : sweeps) {
        if (sweep.empty()) err << "warning: series " << name << " has no feasible control value\n";
    }
    if (sweeps.size() == 1) {
        return family_csv(sweeps.front().second);
    }
    return series_csv(sweeps);
}

inline std::string cmd_simulate(const Options& opt) {
    const DegreePMF pmf = detail::load_pmf(opt);
    if (opt.n == 0) throw Error(Errc::InvalidInput, "--n must be positive");
    const SimResult r = monte_carlo(pmf, opt.n, opt.reps, opt.seed, opt.threads);
    if (opt.format == "csv") {
        return replicas_csv(r);
    }
    return detail::dump(nlohmann::json(r));
}

/// Entry point shared by the executable and the tests. Data goes to `out`
/// (or --output), diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Giant-component size of configuration-model graphs: solver, bounds, "
                 "grid searches and simulation"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "JSON file with option values; flags override it");
        sub->add_option("--output,-o", opt.output, "Write data here instead of standard output");
        sub->add_option("--format", opt.format, "json or csv (default depends on the subcommand)");
        sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "Random seed");
        sub->add_flag("--error-json", opt.error_json, "Report errors as JSON on stderr");
    };
    const auto pmf_input = [&](CLI::App* sub) {
        auto* inline_pmf = sub->add_option("--pmf", opt.pmf, "Inline pmf 'd:p,d:p,...'");
        auto* file_pmf = sub->add_option("--pmf-file", opt.pmf_file, "pmf text (degree<TAB>prob) or JSON file");
        inline_pmf->excludes(file_pmf);
        sub->callback([inline_pmf, file_pmf] {
            if (inline_pmf->count() + file_pmf->count() != 1) {
                throw CLI::ValidationError("exactly one of --pmf / --pmf-file is required");
            }
        });
    };

    auto* solve = app.add_subcommand("solve", "mu, nu, extinction probability and giant fraction of a pmf");
    auto* bounds = app.add_subcommand("bounds", "Bounds report for a prefix p_1..p_L and mean mu");
    auto* table1 = app.add_subcommand("table1", "Six reference bound examples as CSV");
    auto* maxgap = app.add_subcommand("maxgap", "Grid search for the maximal gap between the bounds");
    auto* figures = app.add_subcommand("figures", "Family sweep data: 1a, 1b, 2a or 2b");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo configuration-model replicas");

    common(solve);
    pmf_input(solve);
    common(bounds);
    bounds->add_option("--prefix", opt.prefix, "Comma-separated p_1..p_L")->required();
    bounds->add_option("--mu", opt.mu, "Class mean")->required();
    common(table1);
    common(maxgap);
    maxgap->add_option("--L", opt.Ls, "Comma-separated L values")->capture_default_str();
    maxgap->add_option("--mu-lo", opt.mu_lo)->capture_default_str();
    maxgap->add_option("--mu-hi", opt.mu_hi)->capture_default_str();
    maxgap->add_option("--mu-step", opt.mu_step)->capture_default_str();
    maxgap->add_option("--step", opt.step, "Prefix lattice step")->capture_default_str();
    maxgap->add_option("--figure3", opt.figure3, "Also write the per-mu maxima CSV here");
    common(figures);
    figures->add_option("--which", opt.which, "1a, 1b, 2a or 2b")->required()
        ->check(CLI::IsMember({"1a", "1b", "2a", "2b"}));
    figures->add_option("--control-step", opt.control_step, "Sweep step for p_1")->capture_default_str();
    common(simulate);
    pmf_input(simulate);
    simulate->add_option("--n", opt.n, "Vertices per replica")->required();
    simulate->add_option("--reps", opt.reps, "Replicas")->capture_default_str();
    simulate->get_option("--seed")->required();

    const auto report = [&](const std::string& name, const std::string& message, int code) {
        if (opt.error_json) {
            err << nlohmann::json{{"error", name}, {"message", message}, {"exit_code", code}}.dump() << "\n";
        } else {
            err << "error: " << message << "\n";
        }
        return code;
    };

    try {
        args = detail::expand_config(std::move(args));
    } catch (const Error& e) {
        return report(std::string(errc_name(e.code())), e.what(), kInvalid);
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        opt.error_json = std::find(args.begin(), args.end(), "--error-json") != args.end();
        return report("UsageError", e.what(), kInvalid);
    }
    if (opt.format.empty()) {
        opt.format = (table1->parsed() || maxgap->parsed() || figures->parsed()) ? "csv" : "json";
    }

    try {
        detail::require_format(opt.format);
        std::string data;
        if (solve->parsed()) data = cmd_solve(opt);
        else if (bounds->parsed()) data = cmd_bounds(opt);
        else if (table1->parsed()) data = cmd_table1(opt);
        else if (maxgap->parsed()) data = cmd_maxgap(opt);
        else if (figures->parsed()) data = cmd_figures(opt, err);
        else if (simulate->parsed()) data = cmd_simulate(opt);

        if (opt.output.empty()) {
            out << data;
        } else {
            std::ofstream file(opt.output, std::ios::binary);
            if (!file) throw Error(Errc::InvalidInput, "cannot write " + opt.output);
            file << data;
        }
        return kOk;
    } catch (const Error& e) {
        const int code = e.code() == Errc::NoConvergence ? kNoConvergence : kInvalid;
        return report(std::string(errc_name(e.code())), e.what(), code);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), kFailure);
    }
}

} // namespace giant::cli
