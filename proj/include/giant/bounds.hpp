#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "giant/degree_dist.hpp"
#include "giant/solver.hpp"

namespace giant {

/// Fixed probabilities p_1..p_L of the small degrees (p_0 = 0 implied).
/// The remaining mass p_{>L} sits on degrees above L.
class Prefix {
public:
    Prefix() = default;

    explicit Prefix(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) {
            throw Error(Errc::BadPrefix, "prefix needs L >= 1");
        }
        double sum = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw Error(Errc::BadPrefix, "prefix probability " + std::to_string(p) +
                                                 " outside [0, 1]");
            }
            sum += p;
        }
        if (sum > 1.0 + 1e-12) {
            throw Error(Errc::BadPrefix, "prefix probabilities sum to " + std::to_string(sum));
        }
        tail_mass_ = 1.0 - sum;
        if (tail_mass_ < 1e-12) {
            tail_mass_ = 0.0;
        }
    }

    int L() const noexcept { return static_cast<int>(probs_.size()); }
    const std::vector<double>& probs() const noexcept { return probs_; }
    /// p_d for 1 <= d <= L, zero otherwise.
    double p(int d) const noexcept { return (d >= 1 && d <= L()) ? probs_[d - 1] : 0.0; }
    double tail_mass() const noexcept { return tail_mass_; }

    /// sum_{d <= L} d p_d
    double partial_mean() const noexcept {
        double m = 0.0;
        for (int d = 1; d <= L(); ++d) {
            m += d * probs_[d - 1];
        }
        return m;
    }

    friend bool operator==(const Prefix& a, const Prefix& b) noexcept { return a.probs_ == b.probs_; }

private:
    std::vector<double> probs_;
    double tail_mass_ = 1.0;
};

namespace detail {

inline std::vector<DegreeMass> prefix_entries(const Prefix& prefix) {
    std::vector<DegreeMass> entries;
    for (int d = 1; d <= prefix.L(); ++d) {
        if (prefix.p(d) > 0.0) {
            entries.push_back({d, prefix.p(d)});
        }
    }
    return entries;
}

inline double snap_integer(double x) {
    const double r = std::round(x);
    return std::abs(x - r) < 1e-12 ? r : x;
}

} // namespace detail

/// kappa = E[D | D > L] = (mu - sum_{d<=L} d p_d) / p_{>L}, shared by every
/// distribution with this prefix and mean mu. Values within 1e-12 of an
/// integer are snapped to it.
inline double kappa(const Prefix& prefix, double mu) {
    if (prefix.tail_mass() <= 0.0) {
        throw Error(Errc::EmptyTail, "p_{>L} = 0, kappa undefined");
    }
    const double k = detail::snap_integer((mu - prefix.partial_mean()) / prefix.tail_mass());
    if (k < prefix.L() + 1) {
        throw Error(Errc::InfeasibleMean, "kappa = " + std::to_string(k) + " < L + 1 = " +
                                              std::to_string(prefix.L() + 1));
    }
    return k;
}

/// G: all remaining mass at L + 1.
inline DegreePMF construct_G(const Prefix& prefix) {
    auto entries = detail::prefix_entries(prefix);
    if (prefix.tail_mass() > 0.0) {
        entries.push_back({prefix.L() + 1, prefix.tail_mass()});
    }
    return make_pmf(std::move(entries), "G");
}

/// H: remaining mass on floor(kappa) and floor(kappa) + 1, mean preserved.
inline DegreePMF construct_H(const Prefix& prefix, double mu) {
    const double k = kappa(prefix, mu);
    const double tail = prefix.tail_mass();
    auto entries = detail::prefix_entries(prefix);
    const double lower = std::floor(k);
    const double upper_weight = k - lower;
    if (upper_weight == 0.0) {
        entries.push_back({static_cast<int>(lower), tail});
    } else {
        entries.push_back({static_cast<int>(lower), (lower + 1.0 - k) * tail});
        entries.push_back({static_cast<int>(lower) + 1, upper_weight * tail});
    }
    return make_pmf(std::move(entries), "H");
}

/// G_m: mass (1 - r_m) p_{>L} at L + 1 and r_m p_{>L} at m, with
/// r_m = (kappa - (L+1)) / (m - (L+1)) so that the mean stays mu.
inline DegreePMF construct_G_m(const Prefix& prefix, double mu, int m) {
    const double k = kappa(prefix, mu);
    const int base = prefix.L() + 1;
    if (!(m > k) || m <= base) {
        throw Error(Errc::BadM, "m = " + std::to_string(m) + " must exceed kappa and L + 1");
    }
    const double r = (k - base) / (m - base);
    const double tail = prefix.tail_mass();
    auto entries = detail::prefix_entries(prefix);
    entries.push_back({base, (1.0 - r) * tail});
    entries.push_back({m, r * tail});
    return make_pmf(std::move(entries), "G_" + std::to_string(m));
}

struct Conditions {
    bool cond_a = false; // z~_G <= exp(-1/(L+1))
    bool cond_b = false; // z~_H <= exp(-2/(L+1))
    double z_G = 1.0;
    double z_H = 1.0;
};

inline double threshold_a(int L) { return std::exp(-1.0 / (L + 1)); }
inline double threshold_b(int L) { return std::exp(-2.0 / (L + 1)); }

inline Conditions check_conditions(const Prefix& prefix, double mu) {
    Conditions out;
    out.z_G = extinction_probability(construct_G(prefix)).value;
    out.cond_a = out.z_G <= threshold_a(prefix.L());
    if (prefix.tail_mass() > 0.0) {
        out.z_H = extinction_probability(construct_H(prefix, mu)).value;
    } else {
        out.z_H = out.z_G;
    }
    out.cond_b = out.z_H <= threshold_b(prefix.L());
    return out;
}

/// A bound value together with whether its hypothesis holds.
struct FlaggedBound {
    double value = 0.0;
    bool guaranteed = false;
};

/// xi_G; a lower bound for every distribution sharing the prefix.
inline double lower_bound_prop1(const Prefix& prefix) { return giant_fraction(construct_G(prefix)); }

/// 1 - g_G(z~_G^(mu)): the optimal lower bound for prefix + mean mu, valid
/// when z~_G <= exp(-1/(L+1)).
inline FlaggedBound lower_bound_thm_a(const Prefix& prefix, double mu) {
    if (prefix.tail_mass() > 0.0) {
        kappa(prefix, mu);
    }
    const DegreePMF g = construct_G(prefix);
    reject_two_regular(g);
    const double z_mu = fixed_point_with_mean(g, mu).value;
    FlaggedBound out;
    out.value = z_mu >= 1.0 ? 0.0 : 1.0 - pgf(g, z_mu);
    out.guaranteed = extinction_probability(g).value <= threshold_a(prefix.L());
    return out;
}

/// xi_H: the optimal upper bound, valid when z~_H <= exp(-2/(L+1)).
inline FlaggedBound upper_bound_thm_b(const Prefix& prefix, double mu) {
    const DegreePMF h = construct_H(prefix, mu);
    const GiantSummary s = giant_summary(h);
    return {s.xi, s.z_tilde <= threshold_b(prefix.L())};
}

struct BoundsReport {
    Prefix prefix;
    double mu = 0.0;
    double kappa = std::nan("");
    double p_gt_L = 0.0;
    std::optional<DegreePMF> G;
    std::optional<DegreePMF> H;
    double z_G = std::nan("");
    double z_G_mu = std::nan("");
    double z_H = std::nan("");
    bool cond_a = false;
    bool cond_b = false;
    double lower_prop1 = std::nan("");
    double lower_thm_a = std::nan("");
    double upper_thm_b = std::nan("");
    bool feasible = false;
    std::string reason; // why the cell is infeasible, empty otherwise

    bool conditions_hold() const noexcept { return feasible && cond_a && cond_b; }
    double gap() const noexcept { return upper_thm_b - lower_thm_a; }
};

/// All bounds for one (prefix, mu) cell. Never throws on bad cells: the
/// failure is recorded in `feasible` / `reason` so grid searches can classify.
///
/// A cell is feasible iff p_{>L} > 0 with kappa >= L + 1, or p_{>L} = 0 with
/// sum d p_d = mu (the class is then the single prefix distribution).
inline BoundsReport bounds_report(const Prefix& prefix, double mu) {
    BoundsReport r;
    r.prefix = prefix;
    r.mu = mu;
    r.p_gt_L = prefix.tail_mass();
    try {
        const int L = prefix.L();
        if (r.p_gt_L > 0.0) {
            r.kappa = (mu - prefix.partial_mean()) / r.p_gt_L; // reported even when infeasible
            r.kappa = kappa(prefix, mu);
        } else if (std::abs(prefix.partial_mean() - mu) > 1e-12) {
            throw Error(Errc::InfeasibleMean, "p_{>L} = 0 and sum d p_d != mu");
        }
        r.G = construct_G(prefix);
        r.H = r.p_gt_L > 0.0 ? construct_H(prefix, mu) : *r.G;

        reject_two_regular(*r.G);
        reject_two_regular(*r.H);
        const GiantSummary g = giant_summary(*r.G);
        const GiantSummary h = giant_summary(*r.H);
        r.z_G = g.z_tilde;
        r.z_H = h.z_tilde;
        r.z_G_mu = fixed_point_with_mean(*r.G, std::max(mu, r.G->mean())).value;
        r.cond_a = r.z_G <= threshold_a(L);
        r.cond_b = r.z_H <= threshold_b(L);
        r.lower_prop1 = g.xi;
        r.lower_thm_a = r.z_G_mu >= 1.0 ? 0.0 : 1.0 - pgf(*r.G, r.z_G_mu);
        r.upper_thm_b = h.xi;
        r.feasible = true;
    } catch (const Error& e) {
        r.feasible = false;
        r.reason = e.what();
    }
    return r;
}

/// Split of an integer law N with mean kappa into
/// N = Z N1 + (1 - Z) N2, Z ~ Be(floor(kappa) + 1 - kappa),
/// E[N1] = floor(kappa), E[N2] = floor(kappa) + 1.
struct MixtureDecomposition {
    DegreePMF n1;
    DegreePMF n2;
    double z_param = 1.0;
    double kappa_low = 0.0;
    double kappa_hi = 0.0;
    double x_param = 1.0;
    double y_param = 0.0;
};

inline MixtureDecomposition mixture_decompose(const DegreePMF& pmf) {
    const double k = detail::snap_integer(pmf.mean());
    const double fl = std::floor(k);
    const int split = static_cast<int>(fl);

    double low_mass = 0.0, low_moment = 0.0, hi_mass = 0.0, hi_moment = 0.0;
    for (const auto& e : pmf.entries()) {
        if (e.degree <= split) {
            low_mass += e.prob;
            low_moment += e.degree * e.prob;
        } else {
            hi_mass += e.prob;
            hi_moment += e.degree * e.prob;
        }
    }

    MixtureDecomposition out;
    out.z_param = fl + 1.0 - k;
    if (hi_mass == 0.0) {
        // Only a point mass at an integral kappa has nothing above floor(kappa).
        if (k != fl || low_moment != fl * low_mass || pmf.size() != 1) {
            throw Error(Errc::DegenerateSplit, "no mass above floor(kappa)");
        }
        out.n1 = pmf;
        out.n2 = point_mass(split + 1);
        out.kappa_low = fl;
        out.kappa_hi = fl + 1.0;
        out.x_param = 1.0;
        out.y_param = 0.0;
        return out;
    }
    if (low_mass == 0.0) {
        throw Error(Errc::DegenerateSplit, "no mass at or below floor(kappa)");
    }
    out.kappa_low = low_moment / low_mass;
    out.kappa_hi = hi_moment / hi_mass;
    const double spread = out.kappa_hi - out.kappa_low;
    // Rounding can push a weight just outside [0, 1] when kappa_hi or
    // kappa_low sits on floor(kappa) + 1 or floor(kappa).
    out.x_param = std::clamp((out.kappa_hi - fl) / spread, 0.0, 1.0);
    out.y_param = std::clamp((out.kappa_hi - fl - 1.0) / spread, 0.0, 1.0);

    const auto mix = [&](double w_low) {
        std::vector<DegreeMass> entries;
        entries.reserve(pmf.size());
        for (const auto& e : pmf.entries()) {
            const double w = e.degree <= split ? w_low / low_mass : (1.0 - w_low) / hi_mass;
            entries.push_back({e.degree, w * e.prob});
        }
        return make_pmf(std::move(entries));
    };
    out.n1 = mix(out.x_param);
    out.n2 = mix(out.y_param);
    return out;
}

} // namespace giant
