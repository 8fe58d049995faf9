#pragma once

#include <algorithm>
#include <cmath>

#include "giant/degree_dist.hpp"

namespace giant {

struct SolverOptions {
    int scan_points = 1024;
    double bracket_width = 1e-14;
    int max_bisections = 200;
    int newton_steps = 50;
    double tolerance = 1e-12;
    /// |nu - 1| below this is treated as critical: no giant component.
    double critical_band = 1e-12;
};

/// Smallest fixed point in [0, 1] of s -> g'(s) / mu.
struct FixedPointResult {
    double value = 1.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
    bool near_critical = false;
};

namespace detail {

/// Smallest root of h(s) = s - g'(s) / mu on [0, 1], assuming h(1) >= 0.
///
/// h is concave (g' is convex) and h(0) = -p_1 / mu <= 0, so {h >= 0} is an
/// interval whose left end is the root we want. A uniform scan locates the
/// first grid point inside that interval; bisection keeps h(lo) < 0 <= h(hi)
/// and therefore converges to the left end, never to a larger root.
inline FixedPointResult smallest_root(const DegreePMF& pmf, double mu, const SolverOptions& opt) {
    const auto h = [&](double s) { return s - pgf_prime(pmf, s) / mu; };

    FixedPointResult out;
    if (h(0.0) >= 0.0) {
        out.value = 0.0;
        out.residual = std::abs(h(0.0));
        out.converged = out.residual <= opt.tolerance;
        return out;
    }

    double lo = 0.0;
    double hi = 1.0;
    bool bracketed = false;
    for (int k = 1; k <= opt.scan_points; ++k) {
        const double s = static_cast<double>(k) / opt.scan_points;
        if (h(s) >= 0.0) {
            lo = static_cast<double>(k - 1) / opt.scan_points;
            hi = s;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        throw Error(Errc::NoConvergence, "no sign change of s - g'(s)/mu on [0, 1]");
    }

    int iterations = 0;
    while (hi - lo > opt.bracket_width && iterations < opt.max_bisections) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (h(mid) >= 0.0 ? hi : lo) = mid;
        ++iterations;
    }

    double s = std::abs(h(lo)) < std::abs(h(hi)) ? lo : hi;
    double residual = std::abs(h(s));
    // Damped Newton polish confined to the final bracket.
    for (int step = 0; step < opt.newton_steps && residual > 0.0; ++step) {
        const double slope = 1.0 - pgf_second(pmf, s) / mu;
        if (slope == 0.0 || !std::isfinite(slope)) {
            break;
        }
        double delta = h(s) / slope;
        bool improved = false;
        for (int damp = 0; damp < 8; ++damp, delta *= 0.5) {
            const double candidate = s - delta;
            if (candidate < lo || candidate > hi) {
                continue;
            }
            const double r = std::abs(h(candidate));
            if (r < residual) {
                s = candidate;
                residual = r;
                improved = true;
                break;
            }
        }
        ++iterations;
        if (!improved) {
            break;
        }
    }

    out.value = std::clamp(s, 0.0, 1.0);
    out.iterations = iterations;
    out.residual = residual;
    out.converged = residual <= opt.tolerance;
    if (!out.converged) {
        throw Error(Errc::NoConvergence,
                    "fixed point residual " + std::to_string(residual) + " above tolerance");
    }
    return out;
}

} // namespace detail

/// Extinction probability of the branching process with offspring law
/// g'(s)/mu: the smallest fixed point, 1 when nu <= 1.
inline FixedPointResult extinction_probability(const DegreePMF& pmf, const SolverOptions& opt = {}) {
    const double mu = pmf.mean();
    if (!(mu > 0.0)) {
        throw Error(Errc::ZeroMean, "extinction probability needs a positive mean");
    }
    const double nu = critical_parameter(pmf);
    if (std::abs(nu - 1.0) < opt.critical_band) {
        FixedPointResult out;
        out.near_critical = true;
        return out;
    }
    if (nu < 1.0) {
        return FixedPointResult{};
    }
    return detail::smallest_root(pmf, mu, opt);
}

/// Smallest fixed point of s -> g'(s)/mu for a class mean mu >= mean(pmf).
/// The map sends [0, 1] into [0, mean(pmf)/mu], so a root always exists.
inline FixedPointResult fixed_point_with_mean(const DegreePMF& pmf, double mu,
                                              const SolverOptions& opt = {}) {
    const double own = pmf.mean();
    if (!(own > 0.0)) {
        throw Error(Errc::ZeroMean, "fixed point needs a positive mean");
    }
    if (mu < own - 1e-12) {
        throw Error(Errc::MeanMismatch, "class mean " + std::to_string(mu) +
                                            " below the distribution mean " + std::to_string(own));
    }
    if (mu <= own) {
        return extinction_probability(pmf, opt);
    }
    return detail::smallest_root(pmf, mu, opt);
}

struct GiantSummary {
    double mu = 0.0;
    double nu = 0.0;
    double z_tilde = 1.0;
    double xi = 0.0;
    bool near_critical = false;
};

inline void reject_two_regular(const DegreePMF& pmf) {
    if (pmf.prob(2) >= 1.0 - 1e-12) {
        throw Error(Errc::DegenerateTwoRegular, "p_2 = 1 is excluded");
    }
}

/// mu, nu, the extinction probability and xi = 1 - g(z~) in one pass.
inline GiantSummary giant_summary(const DegreePMF& pmf, const SolverOptions& opt = {}) {
    reject_two_regular(pmf);
    GiantSummary out;
    out.mu = pmf.mean();
    if (!(out.mu > 0.0)) {
        throw Error(Errc::ZeroMean, "giant fraction needs a positive mean");
    }
    out.nu = critical_parameter(pmf);
    const FixedPointResult z = extinction_probability(pmf, opt);
    out.z_tilde = z.value;
    out.near_critical = z.near_critical;
    out.xi = (z.near_critical || z.value >= 1.0) ? 0.0 : std::clamp(1.0 - pgf(pmf, z.value), 0.0, 1.0);
    return out;
}

/// Asymptotic fraction of vertices in the giant component.
inline double giant_fraction(const DegreePMF& pmf, const SolverOptions& opt = {}) {
    return giant_summary(pmf, opt).xi;
}

} // namespace giant
