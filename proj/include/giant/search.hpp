#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "giant/bounds.hpp"

namespace giant {

namespace detail {

inline int units_per_one(double step) {
    if (!(step > 0.0 && step <= 1.0)) {
        throw Error(Errc::BadStep, "step must lie in (0, 1]");
    }
    const double inv = 1.0 / step;
    const double k = std::round(inv);
    if (std::abs(k * step - 1.0) > 1e-12) {
        throw Error(Errc::BadStep, "step " + std::to_string(step) + " does not divide 1");
    }
    return static_cast<int>(k);
}

} // namespace detail

/// Every prefix (p_1..p_L) on the lattice {0, step, 2 step, ...} with
/// sum <= 1, in lexicographic order. There are C(1/step + L, L) of them.
inline std::vector<Prefix> enumerate_prefixes(int L, double step) {
    if (L < 1 || L > 8) {
        throw Error(Errc::BadStep, "L must lie in 1..8");
    }
    const int units = detail::units_per_one(step);
    std::vector<Prefix> out;
    std::vector<int> counts(static_cast<std::size_t>(L), 0);
    const auto fill = [&](auto& self, int pos, int remaining) -> void {
        for (int c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            if (pos + 1 < L) {
                self(self, pos + 1, remaining - c);
                continue;
            }
            std::vector<double> probs(counts.size());
            std::transform(counts.begin(), counts.end(), probs.begin(),
                           [&](int k) { return k * step; });
            out.emplace_back(std::move(probs));
        }
    };
    fill(fill, 0, units);
    return out;
}

/// Evenly spaced grid lo, lo + step, ..., hi (inclusive within 1e-9).
inline std::vector<double> linear_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) {
        throw Error(Errc::BadStep, "bad grid [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                       "] step " + std::to_string(step));
    }
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        grid.push_back(lo + static_cast<double>(i) * step);
    }
    return grid;
}

struct MuMax {
    double mu = 0.0;
    std::optional<double> max_gap; // empty when no cell at this mu qualifies
};

struct GridSearchResult {
    int L = 0;
    std::vector<double> mu_grid;
    double step = 0.0;
    std::optional<double> best_gap;
    Prefix best_prefix;
    double best_mu = std::nan("");
    double best_lower = std::nan("");
    double best_upper = std::nan("");
    long cells_total = 0;
    long cells_feasible = 0;
    long cells_condition_ok = 0;
    std::vector<MuMax> per_mu_max;
};

/// Maximum over all L of the per-mu maxima.
struct CombinedMuMax {
    double mu = 0.0;
    std::optional<double> max_gap;
    int argmax_L = 0;
};

struct MaxGapConfig {
    std::vector<int> Ls{2, 3, 4, 5};
    double mu_lo = 1.0;
    double mu_hi = 5.0;
    double mu_step = 0.2;
    double prefix_step = 0.05;
    unsigned threads = 1;
};

struct MaxGapResult {
    std::vector<GridSearchResult> per_L;
    std::vector<CombinedMuMax> combined;
};

namespace detail {

struct CellKey {
    double gap = -std::numeric_limits<double>::infinity();
    std::size_t mu_index = 0;
    std::size_t prefix_index = 0;
    bool set = false;
};

// Larger gap wins; ties go to the smaller mu, then the lexicographically
// smaller prefix (enumeration order).
inline bool beats(const CellKey& a, const CellKey& b) {
    if (!a.set) return false;
    if (!b.set) return true;
    if (a.gap != b.gap) return a.gap > b.gap;
    if (a.mu_index != b.mu_index) return a.mu_index < b.mu_index;
    return a.prefix_index < b.prefix_index;
}

struct PartialSearch {
    CellKey best;
    std::vector<CellKey> per_mu;
    long feasible = 0;
    long condition_ok = 0;
};

inline PartialSearch search_slice(const std::vector<Prefix>& prefixes, const std::vector<double>& mus,
                                  std::size_t first, std::size_t stride) {
    PartialSearch part;
    part.per_mu.resize(mus.size());
    for (std::size_t pi = first; pi < prefixes.size(); pi += stride) {
        for (std::size_t mi = 0; mi < mus.size(); ++mi) {
            const BoundsReport r = bounds_report(prefixes[pi], mus[mi]);
            if (!r.feasible) {
                continue;
            }
            ++part.feasible;
            if (!(r.cond_a && r.cond_b)) {
                continue;
            }
            ++part.condition_ok;
            const CellKey key{r.gap(), mi, pi, true};
            if (beats(key, part.per_mu[mi])) part.per_mu[mi] = key;
            if (beats(key, part.best)) part.best = key;
        }
    }
    return part;
}

} // namespace detail

/// Grid search for one L. Cells are pure functions of (prefix, mu), so the
/// prefixes are split across `threads` workers and reduced with the
/// deterministic tie-break; the result does not depend on the thread count.
inline GridSearchResult grid_search(int L, const std::vector<double>& mus, double prefix_step,
                                    unsigned threads = 1) {
    const std::vector<Prefix> prefixes = enumerate_prefixes(L, prefix_step);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(prefixes.size())));

    std::vector<detail::PartialSearch> parts(threads);
    if (threads == 1) {
        parts[0] = detail::search_slice(prefixes, mus, 0, 1);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] { parts[t] = detail::search_slice(prefixes, mus, t, threads); });
        }
        for (auto& w : workers) w.join();
    }

    GridSearchResult out;
    out.L = L;
    out.mu_grid = mus;
    out.step = prefix_step;
    out.cells_total = static_cast<long>(prefixes.size() * mus.size());
    detail::CellKey best;
    std::vector<detail::CellKey> per_mu(mus.size());
    for (const auto& part : parts) {
        out.cells_feasible += part.feasible;
        out.cells_condition_ok += part.condition_ok;
        if (detail::beats(part.best, best)) best = part.best;
        for (std::size_t mi = 0; mi < mus.size(); ++mi) {
            if (detail::beats(part.per_mu[mi], per_mu[mi])) per_mu[mi] = part.per_mu[mi];
        }
    }
    for (std::size_t mi = 0; mi < mus.size(); ++mi) {
        MuMax m{mus[mi], std::nullopt};
        if (per_mu[mi].set) m.max_gap = per_mu[mi].gap;
        out.per_mu_max.push_back(m);
    }
    if (best.set) {
        const BoundsReport r = bounds_report(prefixes[best.prefix_index], mus[best.mu_index]);
        out.best_gap = best.gap;
        out.best_prefix = r.prefix;
        out.best_mu = r.mu;
        out.best_lower = r.lower_thm_a;
        out.best_upper = r.upper_thm_b;
    }
    return out;
}

/// Largest gap between the optimal upper and lower bounds, over the prefix
/// lattice and mu grid, counting only feasible cells where both technical
/// conditions hold.
inline MaxGapResult max_gap_search(const MaxGapConfig& config) {
    const std::vector<double> mus = linear_grid(config.mu_lo, config.mu_hi, config.mu_step);
    MaxGapResult out;
    for (int L : config.Ls) {
        out.per_L.push_back(grid_search(L, mus, config.prefix_step, config.threads));
    }
    for (std::size_t mi = 0; mi < mus.size(); ++mi) {
        CombinedMuMax c{mus[mi], std::nullopt, 0};
        for (const auto& r : out.per_L) {
            const auto& g = r.per_mu_max[mi].max_gap;
            if (g && (!c.max_gap || *g > *c.max_gap)) {
                c.max_gap = g;
                c.argmax_L = r.L;
            }
        }
        out.combined.push_back(c);
    }
    return out;
}

} // namespace giant
