#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "giant/degree_dist.hpp"
#include "giant/solver.hpp"
#include "giant/tail.hpp"

namespace giant {

/// One member of a one-parameter, mean-preserving family of degree laws.
/// Points of a fixed-tail sweep share one materialized tail; the full pmf is
/// assembled on request.
struct FamilyPoint {
    double control = 0.0; // the varied probability, p_{d1}
    std::array<DegreeMass, 3> low{};
    std::shared_ptr<const TailFragment> tail;
    double mu = 0.0; // the family's fixed mean
    double xi = 0.0;
    double nu = 0.0;

    DegreePMF pmf() const {
        std::vector<DegreeMass> entries(low.begin(), low.end());
        if (tail) entries.insert(entries.end(), tail->entries.begin(), tail->entries.end());
        return make_pmf(std::move(entries), tail ? "fixed-tail" : "three-point");
    }
};

/// Three free degrees d1 < d2 < d3 on top of a fixed block of probability
/// `fixed_mass` carrying first moment `fixed_mean`. Setting p_{d1} = control
/// leaves p_{d2}, p_{d3} determined by total mass 1 and mean mu; both are
/// affine in the control.
struct ThreePointSystem {
    std::array<int, 3> degrees{};
    double mu = 0.0;
    double fixed_mass = 0.0;
    double fixed_mean = 0.0;

    /// (p_{d2}, p_{d3}) for the given control.
    std::pair<double, double> solve(double control) const {
        const auto [d1, d2, d3] = degrees;
        const double mass = 1.0 - fixed_mass - control;
        const double moment = mu - fixed_mean - d1 * control;
        const double p3 = (moment - d2 * mass) / (d3 - d2);
        return {mass - p3, p3};
    }

    /// Closed interval of controls for which all three probabilities lie in
    /// [0, 1]; empty (first > second) when there is none.
    std::pair<double, double> control_range() const {
        double lo = 0.0;
        double hi = 1.0 - fixed_mass;
        // p2(c) = a2 + b2 c, p3(c) = a3 + b3 c
        const auto [a2, a3] = solve(0.0);
        const auto [s2, s3] = solve(1.0);
        const double b2 = s2 - a2;
        const double b3 = s3 - a3;
        const auto clip = [&](double a, double b) {
            if (b > 0.0) lo = std::max(lo, -a / b);
            else if (b < 0.0) hi = std::min(hi, -a / b);
            else if (a < 0.0) hi = -1.0;
        };
        clip(a2, b2);
        clip(a3, b3);
        return {lo, hi};
    }
};

namespace detail {

inline void check_supports(const std::array<int, 3>& d) {
    if (!(d[0] >= 1 && d[0] < d[1] && d[1] < d[2])) {
        throw Error(Errc::InvalidInput, "family supports must satisfy 1 <= d1 < d2 < d3");
    }
}

// Probabilities within this distance of [0, 1] are clamped, so that grid
// endpoints such as p_1 = 0.45 survive floating point cancellation.
inline constexpr double kControlSlack = 1e-12;

inline double clamp_probability(double p) {
    if (p < -kControlSlack || p > 1.0 + kControlSlack) {
        throw Error(Errc::InfeasibleControl, "probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

inline FamilyPoint finish_point(double control, std::array<DegreeMass, 3> low,
                                std::shared_ptr<const TailFragment> tail, double mu) {
    FamilyPoint pt;
    pt.control = control;
    pt.low = low;
    pt.tail = std::move(tail);
    pt.mu = mu;
    double factorial = pt.tail ? pt.tail->total_factorial_moment : 0.0;
    for (const auto& e : low) factorial += static_cast<double>(e.degree) * (e.degree - 1) * e.prob;
    pt.nu = factorial / mu;

    const DegreePMF pmf = pt.pmf();
    reject_two_regular(pmf);
    if (pt.nu > 1.0) {
        const double z = fixed_point_with_mean(pmf, std::max(mu, pmf.mean())).value;
        pt.xi = z >= 1.0 ? 0.0 : std::clamp(1.0 - pgf(pmf, z), 0.0, 1.0);
    }
    return pt;
}

} // namespace detail

/// Degrees {d1, d2, d3} only, p_{d1} = control, mean fixed at mu.
inline FamilyPoint three_point_family(const std::array<int, 3>& supports, double mu, double control) {
    detail::check_supports(supports);
    const ThreePointSystem sys{supports, mu, 0.0, 0.0};
    const auto [p2, p3] = sys.solve(control);
    const double c = detail::clamp_probability(control);
    const double q2 = detail::clamp_probability(p2);
    const double q3 = detail::clamp_probability(p3);
    return detail::finish_point(control, {{{supports[0], c}, {supports[1], q2}, {supports[2], q3}}}, nullptr, mu);
}

/// A fixed tail from `tail` plus low degrees {d1, d2, d3} absorbing the
/// remaining mass: p_{d1} = control, p_{d2} and p_{d3} balance mass and mean.
/// Degrees between d3 and the tail's minimum carry probability zero.
///
/// Mass and mean are balanced against the untruncated tail, so the family
/// mean is exactly mu even when the explicit tail stops at a finite cutoff.
inline FamilyPoint fixed_tail_family(std::shared_ptr<const TailFragment> tail,
                                     const std::array<int, 3>& low_support, double mu, double control) {
    detail::check_supports(low_support);
    if (!tail || tail->min_degree <= low_support[2]) {
        throw Error(Errc::InvalidInput, "tail must start above the low-degree support");
    }
    const ThreePointSystem sys{low_support, mu, tail->total_mass, tail->total_mean};
    const auto [p2, p3] = sys.solve(control);
    const double c = detail::clamp_probability(control);
    const double q2 = detail::clamp_probability(p2);
    const double q3 = detail::clamp_probability(p3);
    return detail::finish_point(control, {{{low_support[0], c}, {low_support[1], q2}, {low_support[2], q3}}},
                                std::move(tail), mu);
}

inline FamilyPoint fixed_tail_family(const TailFragment& tail, const std::array<int, 3>& low_support,
                                     double mu, double control) {
    return fixed_tail_family(std::make_shared<const TailFragment>(tail), low_support, mu, control);
}

inline FamilyPoint fixed_tail_family(const TailSpec& tail, const std::array<int, 3>& low_support,
                                     double mu, double control) {
    return fixed_tail_family(std::make_shared<const TailFragment>(materialize_tail(tail)), low_support, mu,
                             control);
}

namespace detail {

// Controls k * step inside [lo, hi], plus hi itself when it is off-grid.
inline std::vector<double> sweep_controls(std::pair<double, double> range, double step) {
    std::vector<double> controls;
    const auto [lo, hi] = range;
    if (!(step > 0.0) || hi < lo) {
        return controls;
    }
    const auto first = static_cast<long>(std::ceil(lo / step - 1e-9));
    for (long k = first;; ++k) {
        const double c = static_cast<double>(k) * step;
        if (c > hi + 1e-12) break;
        controls.push_back(std::clamp(c, lo, hi));
    }
    if (controls.empty() || hi - controls.back() > 1e-9) {
        controls.push_back(hi);
    }
    return controls;
}

} // namespace detail

inline std::vector<FamilyPoint> sweep_three_point(const std::array<int, 3>& supports, double mu,
                                                  double step) {
    detail::check_supports(supports);
    const ThreePointSystem sys{supports, mu, 0.0, 0.0};
    std::vector<FamilyPoint> out;
    for (double c : detail::sweep_controls(sys.control_range(), step)) {
        out.push_back(three_point_family(supports, mu, c));
    }
    return out;
}

inline std::vector<FamilyPoint> sweep_fixed_tail(const TailFragment& fragment,
                                                 const std::array<int, 3>& low_support, double mu,
                                                 double step) {
    const auto tail = std::make_shared<const TailFragment>(fragment);
    const ThreePointSystem sys{low_support, mu, tail->total_mass, tail->total_mean};
    std::vector<FamilyPoint> out;
    for (double c : detail::sweep_controls(sys.control_range(), step)) {
        out.push_back(fixed_tail_family(tail, low_support, mu, c));
    }
    return out;
}

} // namespace giant
