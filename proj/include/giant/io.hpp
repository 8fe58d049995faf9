#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "giant/bounds.hpp"
#include "giant/families.hpp"
#include "giant/search.hpp"
#include "giant/simulator.hpp"
#include "giant/solver.hpp"

namespace giant {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Number formatting

/// Fixed-point text with `decimals` digits, rounding half away from zero.
inline std::string fixed(double x, int decimals) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    const double scale = std::pow(10.0, decimals);
    double r = std::round(x * scale) / scale;
    if (r == 0.0) r = 0.0; // no "-0.0000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
    return buf;
}

/// Rounded value, for JSON fields presented at fixed precision.
inline double round_to(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(x * scale) / scale;
    return r == 0.0 ? 0.0 : r;
}

// ---------------------------------------------------------------------------
// PMF text format: "degree<TAB>probability" per line, '#' starts a comment.

inline DegreePMF parse_pmf_text(std::istream& in, std::string provenance = {}) {
    std::vector<DegreeMass> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long degree = 0;
        double prob = 0.0;
        if (!(fields >> degree)) {
            fields.clear();
            std::string rest;
            if (fields >> rest) {
                throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad degree");
            }
            continue; // blank or comment-only
        }
        std::string extra;
        if (!(fields >> prob) || (fields >> extra)) {
            throw Error(Errc::ParseError,
                        "line " + std::to_string(line_no) + ": expected 'degree<TAB>probability'");
        }
        entries.push_back({static_cast<int>(degree), prob});
    }
    return make_pmf(std::move(entries), std::move(provenance));
}

/// "d:p,d:p,..."
inline DegreePMF parse_pmf_inline(std::string_view text, std::string provenance = {}) {
    std::vector<DegreeMass> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item(text.substr(pos, comma - pos));
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw Error(Errc::ParseError, "expected 'degree:probability', got '" + item + "'");
        }
        try {
            std::size_t used_d = 0, used_p = 0;
            const std::string d = item.substr(0, colon);
            const std::string p = item.substr(colon + 1);
            const int degree = std::stoi(d, &used_d);
            const double prob = std::stod(p, &used_p);
            if (used_d != d.size() || used_p != p.size()) throw std::invalid_argument(item);
            entries.push_back({degree, prob});
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, "bad pmf entry '" + item + "'");
        }
        pos = comma + 1;
    }
    return make_pmf(std::move(entries), std::move(provenance));
}

inline std::string format_pmf_text(const DegreePMF& pmf) {
    std::string out;
    if (!pmf.provenance().empty()) out += "# " + pmf.provenance() + "\n";
    char buf[64];
    for (const auto& e : pmf.entries()) {
        std::snprintf(buf, sizeof buf, "%d\t%.17g\n", e.degree, e.prob);
        out += buf;
    }
    return out;
}

/// Comma-separated probabilities, e.g. "0.31,0.31,0.21".
inline Prefix parse_prefix(std::string_view text) {
    std::vector<double> probs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item(text.substr(pos, comma - pos));
        try {
            std::size_t used = 0;
            probs.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, "bad prefix entry '" + item + "'");
        }
        pos = comma + 1;
    }
    return Prefix(std::move(probs));
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(json& j, const DegreePMF& pmf) {
    json probs = json::array();
    for (const auto& e : pmf.entries()) probs.push_back({e.degree, e.prob});
    j = json{{"probs", std::move(probs)}, {"provenance", pmf.provenance()}};
}

inline void from_json(const json& j, DegreePMF& pmf) {
    try {
        std::vector<DegreeMass> entries;
        for (const auto& item : j.at("probs")) {
            entries.push_back({item.at(0).get<int>(), item.at(1).get<double>()});
        }
        pmf = make_pmf(std::move(entries), j.value("provenance", std::string{}));
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("pmf json: ") + e.what());
    }
}

inline void to_json(json& j, const Prefix& prefix) {
    j = json{{"probs", prefix.probs()}, {"L", prefix.L()}};
}

inline void to_json(json& j, const FixedPointResult& r) {
    j = json{{"value", r.value},
             {"iterations", r.iterations},
             {"residual", r.residual},
             {"converged", r.converged},
             {"near_critical", r.near_critical}};
}

inline void to_json(json& j, const BoundsReport& r) {
    j = json{{"prefix", r.prefix},
             {"mu", r.mu},
             {"kappa", r.kappa},
             {"p_gt_L", r.p_gt_L},
             {"G", r.G ? json(*r.G) : json(nullptr)},
             {"H", r.H ? json(*r.H) : json(nullptr)},
             {"z_G", r.z_G},
             {"z_G_mu", r.z_G_mu},
             {"z_H", r.z_H},
             {"cond_a", r.cond_a},
             {"cond_b", r.cond_b},
             {"lower_prop1", r.lower_prop1},
             {"lower_thm_a", r.lower_thm_a},
             {"upper_thm_b", r.upper_thm_b},
             {"feasible", r.feasible}};
    if (!r.reason.empty()) j["reason"] = r.reason;
}

inline void to_json(json& j, const SimResult& r) {
    j = json{{"n", r.n},
             {"reps", r.reps},
             {"seed", r.seed},
             {"fractions", r.fractions},
             {"mean_fraction", r.mean_fraction},
             {"stderr", r.stderr_fraction}};
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline void to_json(json& j, const GridSearchResult& r) {
    json per_mu = json::array();
    for (const auto& m : r.per_mu_max) per_mu.push_back({m.mu, optional_json(m.max_gap)});
    j = json{{"L", r.L},
             {"mu_grid", r.mu_grid},
             {"step", r.step},
             {"best_gap", optional_json(r.best_gap)},
             {"best_prefix", r.best_gap ? json(r.best_prefix) : json(nullptr)},
             {"best_mu", r.best_mu},
             {"best_lower", r.best_lower},
             {"best_upper", r.best_upper},
             {"cells_total", r.cells_total},
             {"cells_feasible", r.cells_feasible},
             {"cells_condition_ok", r.cells_condition_ok},
             {"per_mu_max", std::move(per_mu)}};
}

inline void to_json(json& j, const MaxGapResult& r) {
    json combined = json::array();
    for (const auto& c : r.combined) {
        combined.push_back({{"mu", c.mu}, {"max_gap", optional_json(c.max_gap)}, {"L", c.argmax_L}});
    }
    j = json{{"per_L", r.per_L}, {"combined", std::move(combined)}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string prefix_cell(const Prefix& prefix, int decimals) {
    std::string out;
    for (int d = 1; d <= prefix.L(); ++d) {
        if (d > 1) out += ';';
        out += fixed(prefix.p(d), decimals);
    }
    return out;
}

inline std::string bounds_csv_header() { return "prefix,mu,L,p_gt_L,lower_prop1,lower_thm_a,upper_thm_b\n"; }

inline std::string bounds_csv_row(const BoundsReport& r) {
    return prefix_cell(r.prefix, 4) + ',' + fixed(r.mu, 4) + ',' + std::to_string(r.prefix.L()) + ',' +
           fixed(r.p_gt_L, 4) + ',' + fixed(r.lower_prop1, 4) + ',' + fixed(r.lower_thm_a, 4) + ',' +
           fixed(r.upper_thm_b, 4) + '\n';
}

inline std::string table2_csv(const MaxGapResult& r) {
    std::string out = "L,max_gap,prefix,mu,lower_thm_a,upper_thm_b\n";
    for (const auto& g : r.per_L) {
        if (!g.best_gap) {
            out += std::to_string(g.L) + ",nan,,nan,nan,nan\n";
            continue;
        }
        out += std::to_string(g.L) + ',' + fixed(*g.best_gap, 4) + ',' + prefix_cell(g.best_prefix, 2) +
               ',' + fixed(g.best_mu, 1) + ',' + fixed(g.best_lower, 4) + ',' + fixed(g.best_upper, 4) +
               '\n';
    }
    return out;
}

inline std::string figure3_csv(const MaxGapResult& r) {
    std::string out = "mu,max_gap,L\n";
    for (const auto& c : r.combined) {
        out += fixed(c.mu, 1) + ',' + (c.max_gap ? fixed(*c.max_gap, 6) : std::string("nan")) + ',' +
               std::to_string(c.argmax_L) + '\n';
    }
    return out;
}

inline std::string family_csv(const std::vector<FamilyPoint>& sweep) {
    std::string out = "control,xi,nu\n";
    for (const auto& pt : sweep) {
        out += fixed(pt.control, 4) + ',' + fixed(pt.xi, 6) + ',' + fixed(pt.nu, 6) + '\n';
    }
    return out;
}

/// Several named sweeps in one file: series,control,xi,nu.
inline std::string series_csv(const std::vector<std::pair<std::string, std::vector<FamilyPoint>>>& series) {
    std::string out = "series,control,xi,nu\n";
    for (const auto& [name, sweep] : series) {
        for (const auto& pt : sweep) {
            out += name + ',' + fixed(pt.control, 4) + ',' + fixed(pt.xi, 6) + ',' + fixed(pt.nu, 6) + '\n';
        }
    }
    return out;
}

inline std::string replicas_csv(const SimResult& r) {
    std::string out = "replica,fraction\n";
    char buf[64];
    for (std::size_t k = 0; k < r.fractions.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, r.fractions[k]);
        out += buf;
    }
    return out;
}

} // namespace giant
