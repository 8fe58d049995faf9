#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "giant/degree_dist.hpp"

namespace giant {

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of replica stream k: splitmix64(seed ^ splitmix64(k)). Part of the
/// reproducibility contract; do not change without bumping the format.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t k) noexcept {
    return splitmix64(seed ^ splitmix64(k));
}

/// 64-bit Mersenne Twister plus fixed conversions, so draws are identical
/// across standard libraries (std::uniform_*_distribution are not).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream for_replica(std::uint64_t seed, std::uint64_t k) {
        return RngStream(derive_stream_seed(seed, k));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., bound - 1}; Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    template <class T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Disjoint sets with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::size_t size() const noexcept { return parent_.size(); }

    /// Sizes of all classes, one entry per root.
    std::vector<std::uint32_t> class_sizes() {
        std::vector<std::uint32_t> sizes;
        for (std::uint32_t v = 0; v < parent_.size(); ++v) {
            if (find(v) == v) sizes.push_back(size_[v]);
        }
        return sizes;
    }

    std::uint32_t largest() {
        std::uint32_t best = 0;
        for (std::uint32_t v = 0; v < parent_.size(); ++v) {
            if (parent_[v] == v) best = std::max(best, size_[v]);
        }
        return best;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

/// n i.i.d. degrees by inverse CDF; if the total is odd one uniformly chosen
/// vertex receives an extra half-edge.
inline std::vector<int> sample_degrees(const DegreePMF& pmf, std::size_t n, RngStream& rng) {
    if (n == 0) {
        throw Error(Errc::InvalidInput, "need at least one vertex");
    }
    const auto entries = pmf.entries();
    std::vector<double> cdf(entries.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        acc += entries[i].prob;
        cdf[i] = acc;
    }
    // Draw against the actual total; a truncated tail is renormalized.
    const double total = acc;

    std::vector<int> degrees(n);
    std::uint64_t sum = 0;
    for (auto& d : degrees) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        d = entries[static_cast<std::size_t>(it - cdf.begin())].degree;
        sum += static_cast<std::uint64_t>(d);
    }
    if (sum % 2 == 1) {
        ++degrees[rng.below(n)];
    }
    return degrees;
}

/// Pair all half-edges uniformly (shuffle, then join consecutive entries)
/// and merge endpoints. Self-loops and multi-edges are kept.
inline UnionFind pair_half_edges(std::span<const int> degrees, RngStream& rng) {
    std::uint64_t total = 0;
    for (int d : degrees) {
        if (d < 0) throw Error(Errc::InvalidInput, "negative degree");
        total += static_cast<std::uint64_t>(d);
    }
    if (total % 2 != 0) {
        throw Error(Errc::OddSum, "half-edge total " + std::to_string(total) + " is odd");
    }
    std::vector<std::uint32_t> stubs;
    stubs.reserve(total);
    for (std::uint32_t v = 0; v < degrees.size(); ++v) {
        stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), v);
    }
    rng.shuffle(std::span<std::uint32_t>(stubs));

    UnionFind components(degrees.size());
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        components.unite(stubs[i], stubs[i + 1]);
    }
    return components;
}

inline double largest_component_fraction(std::span<const int> degrees, RngStream& rng) {
    if (degrees.empty()) {
        throw Error(Errc::InvalidInput, "empty degree sequence");
    }
    UnionFind components = pair_half_edges(degrees, rng);
    return static_cast<double>(components.largest()) / static_cast<double>(degrees.size());
}

struct SimResult {
    std::size_t n = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<double> fractions;
    double mean_fraction = 0.0;
    double stderr_fraction = 0.0; // sample standard deviation / sqrt(reps)
};

/// Replica k draws degrees and the pairing from RngStream::for_replica(seed, k),
/// so the result depends only on (pmf, n, reps, seed), not on `threads`.
inline SimResult monte_carlo(const DegreePMF& pmf, std::size_t n, int reps, std::uint64_t seed,
                             unsigned threads = 1) {
    if (reps < 1) {
        throw Error(Errc::InvalidInput, "reps must be >= 1");
    }
    if (n == 0) {
        throw Error(Errc::InvalidInput, "need at least one vertex");
    }
    SimResult out;
    out.n = n;
    out.reps = reps;
    out.seed = seed;
    out.fractions.assign(static_cast<std::size_t>(reps), 0.0);

    const auto run = [&](std::size_t k) {
        RngStream rng = RngStream::for_replica(seed, k);
        const std::vector<int> degrees = sample_degrees(pmf, n, rng);
        out.fractions[k] = largest_component_fraction(degrees, rng);
    };
    threads = std::max(1u, std::min(threads, static_cast<unsigned>(reps)));
    if (threads == 1) {
        for (std::size_t k = 0; k < out.fractions.size(); ++k) run(k);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t k = t; k < out.fractions.size(); k += threads) run(k);
            });
        }
        for (auto& w : workers) w.join();
    }

    out.mean_fraction = std::accumulate(out.fractions.begin(), out.fractions.end(), 0.0) / reps;
    if (reps > 1) {
        double ss = 0.0;
        for (double f : out.fractions) ss += (f - out.mean_fraction) * (f - out.mean_fraction);
        out.stderr_fraction = std::sqrt(ss / (reps - 1)) / std::sqrt(static_cast<double>(reps));
    }
    return out;
}

} // namespace giant
