#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "giant/degree_dist.hpp"

namespace giant {

/// p_d = P(Po(rate) = d) for d >= min_degree. The probabilities are the
/// unconditioned Poisson ones; only the support is restricted.
struct PoissonTail {
    double rate = 1.0;
    int min_degree = 0;
};

/// p_d = constant * d^(-exponent) for d >= min_degree >= 1.
struct PowerLawTail {
    double constant = 1.0;
    double exponent = 3.0;
    int min_degree = 1;
};

struct TailSpec {
    std::variant<PoissonTail, PowerLawTail> kind;
    double mass_tol = 1e-12;
    double mean_tol = 1e-10;
};

inline constexpr int kDefaultTailCap = 1 << 22;

/// A materialized tail: explicit probabilities up to `cutoff`, plus the exact
/// totals of the untruncated tail so callers can balance mass and mean
/// against the full distribution.
struct TailFragment {
    std::vector<DegreeMass> entries;
    int min_degree = 0;
    int cutoff = 0;
    bool capped = false; // cutoff limited by the degree cap, not by the tolerances
    double retained_mass = 0.0;
    double retained_mean = 0.0;
    double total_mass = 0.0;
    double total_mean = 0.0;
    double total_factorial_moment = 0.0; // sum d(d-1) p_d; +inf when divergent

    double omitted_mass() const noexcept { return std::max(0.0, total_mass - retained_mass); }
    double omitted_mean() const noexcept { return std::max(0.0, total_mean - retained_mean); }
};

namespace detail {

inline double poisson_pmf(double rate, int d) {
    return std::exp(d * std::log(rate) - rate - std::lgamma(d + 1.0));
}

// P(Po(rate) >= k).
inline double poisson_upper(double rate, int k) {
    if (k <= 0) {
        return 1.0;
    }
    return boost::math::gamma_p(static_cast<double>(k), rate);
}

inline TailFragment materialize(const PoissonTail& tail, const TailSpec& spec, int cap) {
    if (!(tail.rate > 0.0) || tail.min_degree < 0) {
        throw Error(Errc::InvalidInput, "Poisson tail needs rate > 0 and min degree >= 0");
    }
    const double rate = tail.rate;
    TailFragment out;
    out.min_degree = tail.min_degree;
    out.total_mass = poisson_upper(rate, tail.min_degree);
    out.total_mean = rate * poisson_upper(rate, tail.min_degree - 1);
    out.total_factorial_moment = rate * rate * poisson_upper(rate, tail.min_degree - 2);

    for (int d = tail.min_degree;; ++d) {
        const double p = poisson_pmf(rate, d);
        out.entries.push_back({d, p});
        out.retained_mass += p;
        out.retained_mean += d * p;
        out.cutoff = d;
        // Geometric bounds on what lies beyond d, valid once the ratio
        // rate / (j + 1) of consecutive terms drops below one.
        if (d + 1 > rate) {
            const double next = p * rate / (d + 1);
            const double mass_bound = next / (1.0 - rate / (d + 2));
            const double mean_bound = rate * p / (1.0 - rate / (d + 1));
            if (mass_bound < spec.mass_tol && mean_bound < spec.mean_tol) {
                break;
            }
        }
        if (d >= cap) {
            out.capped = true;
            break;
        }
    }
    return out;
}

inline TailFragment materialize(const PowerLawTail& tail, const TailSpec& spec, int cap) {
    if (!(tail.exponent > 2.0)) {
        throw Error(Errc::DivergentTail, "power-law exponent must exceed 2 for a finite mean");
    }
    if (!(tail.constant > 0.0) || tail.min_degree < 1) {
        throw Error(Errc::InvalidInput, "power-law tail needs constant > 0 and min degree >= 1");
    }
    const double c = tail.constant;
    const double a = tail.exponent;
    TailFragment out;
    out.min_degree = tail.min_degree;

    double head_mass = 0.0;
    double head_mean = 0.0;
    double head_factorial = 0.0;
    for (int d = 1; d < tail.min_degree; ++d) {
        const double w = std::pow(static_cast<double>(d), -a);
        head_mass += w;
        head_mean += d * w;
        head_factorial += static_cast<double>(d) * (d - 1) * w;
    }
    out.total_mass = c * (boost::math::zeta(a) - head_mass);
    out.total_mean = c * (boost::math::zeta(a - 1.0) - head_mean);
    out.total_factorial_moment =
        a > 3.0 ? c * (boost::math::zeta(a - 2.0) - boost::math::zeta(a - 1.0) - head_factorial)
                : std::numeric_limits<double>::infinity();

    // Integral bounds: sum_{d>D} d^-s <= D^(1-s) / (s - 1).
    const double d_mass = std::pow(c / ((a - 1.0) * spec.mass_tol), 1.0 / (a - 1.0));
    const double d_mean = std::pow(c / ((a - 2.0) * spec.mean_tol), 1.0 / (a - 2.0));
    const double wanted = std::ceil(std::max({d_mass, d_mean, static_cast<double>(tail.min_degree)}));
    out.capped = wanted > cap;
    out.cutoff = out.capped ? cap : static_cast<int>(wanted);

    out.entries.reserve(static_cast<std::size_t>(out.cutoff - tail.min_degree + 1));
    for (int d = tail.min_degree; d <= out.cutoff; ++d) {
        const double p = c * std::pow(static_cast<double>(d), -a);
        out.entries.push_back({d, p});
        out.retained_mass += p;
        out.retained_mean += d * p;
    }
    return out;
}

} // namespace detail

/// Expand an analytic tail into explicit probabilities. The cutoff is the
/// first degree beyond which both the omitted mass and the omitted mean
/// contribution are below the given tolerances, limited to
/// `max_degree_hint` (default 2^22). Retained probabilities do not depend on
/// the tolerances; tightening them only extends the support.
inline TailFragment materialize_tail(const TailSpec& spec,
                                     std::optional<int> max_degree_hint = std::nullopt) {
    if (!(spec.mass_tol > 0.0) || !(spec.mean_tol > 0.0)) {
        throw Error(Errc::InvalidInput, "tail tolerances must be positive");
    }
    const int cap = max_degree_hint.value_or(kDefaultTailCap);
    TailFragment out = std::visit(
        [&](const auto& tail) { return detail::materialize(tail, spec, cap); }, spec.kind);
    if (out.total_mass > 1.0 + kMassTolerance) {
        throw Error(Errc::InvalidInput, "tail mass " + std::to_string(out.total_mass) + " exceeds 1");
    }
    return out;
}

} // namespace giant
