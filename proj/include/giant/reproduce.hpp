#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "giant/bounds.hpp"
#include "giant/families.hpp"
#include "giant/tail.hpp"

namespace giant {

/// P(Po(rate) = d | Po(rate) > 0) for d = 1..L.
inline Prefix conditioned_poisson_prefix(double rate, int L) {
    std::vector<double> probs;
    const double norm = -std::expm1(-rate);
    for (int d = 1; d <= L; ++d) {
        probs.push_back(std::exp(d * std::log(rate) - rate - std::lgamma(d + 1.0)) / norm);
    }
    return Prefix(std::move(probs));
}

struct BoundsCase {
    std::string label;
    Prefix prefix;
    double mu = 0.0;
    double expected_prop1 = 0.0; // reference values, 4 decimals
    double expected_thm_a = 0.0;
    double expected_thm_b = 0.0;
};

/// Six reference bound examples. The first two prefixes are Poisson
/// laws with mean 2 and 1.5 conditioned on D > 0; rounding them to two
/// decimals changes the bounds in the third decimal.
inline std::vector<BoundsCase> table1_cases() {
    const Prefix po2 = conditioned_poisson_prefix(2.0, 3);
    const Prefix po15 = conditioned_poisson_prefix(1.5, 2);
    const Prefix seventy({0.7, 0.0, 0.0});
    const Prefix halves({0.5, 0.25, 0.125});
    return {
        {"po2-conditioned", po2, 3.0, 0.9140, 0.9504, 0.9508},
        {"po1.5-conditioned", po15, 3.0, 0.5896, 0.9019, 0.9103},
        {"0.7,0,0", seventy, 2.0, 0.7023, 0.7247, 0.7318},
        {"0.7,0,0", seventy, 3.0, 0.7023, 0.8319, 0.8366},
        {"0.5,0.25,0.125", halves, 2.0, 0.7047, 0.7553, 0.7680},
        {"0.5,0.25,0.125", halves, 3.0, 0.7047, 0.8836, 0.8851},
    };
}

struct MaxGapRow {
    int L = 0;
    double max_gap = 0.0;
    std::vector<double> prefix;
    double mu = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// Reference maximal bound gaps for L = 2..5 (grid step 0.05, mu step 0.2).
inline std::vector<MaxGapRow> table2_rows() {
    return {
        {2, 0.055, {0.6, 0.1}, 2.0, 0.7059, 0.7616},
        {3, 0.041, {0.55, 0.35, 0.0}, 1.8, 0.5664, 0.6078},
        {4, 0.029, {0.75, 0.1, 0.1, 0.0}, 1.6, 0.4203, 0.4494},
        {5, 0.024, {0.75, 0.2, 0.0, 0.0, 0.0}, 1.6, 0.4188, 0.4423},
    };
}

using NamedSweep = std::pair<std::string, std::vector<FamilyPoint>>;

/// Family sweeps behind the figures: "1a" ({1,2,3}, mu 2.1), "1b"
/// ({1,2,10}, mu 2.1), "2a" (Po(2) and 2 d^-3 tails from degree 4, mu 2.2)
/// and "2b" (Po(7) and 5 d^-2.5 tails from degree 11, mu 3.5). In the tail
/// families p_1 is varied and p_2, p_3 absorb the rest; other low degrees
/// are zero.
inline std::vector<NamedSweep> figure_sweeps(const std::string& which, double step = 0.01) {
    if (which == "1a") {
        return {{"d123", sweep_three_point({1, 2, 3}, 2.1, step)}};
    }
    if (which == "1b") {
        return {{"d1-2-10", sweep_three_point({1, 2, 10}, 2.1, step)}};
    }
    if (which == "2a" || which == "2b") {
        const bool a = which == "2a";
        const int min_degree = a ? 4 : 11;
        const double mu = a ? 2.2 : 3.5;
        const TailSpec poisson{PoissonTail{a ? 2.0 : 7.0, min_degree}};
        const TailSpec power{PowerLawTail{a ? 2.0 : 5.0, a ? 3.0 : 2.5, min_degree}};
        return {{"poisson", sweep_fixed_tail(materialize_tail(poisson), {1, 2, 3}, mu, step)},
                {"powerlaw", sweep_fixed_tail(materialize_tail(power), {1, 2, 3}, mu, step)}};
    }
    throw Error(Errc::InvalidInput, "unknown figure '" + which + "' (expected 1a, 1b, 2a or 2b)");
}

} // namespace giant
