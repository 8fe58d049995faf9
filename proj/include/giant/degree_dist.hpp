#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "giant/error.hpp"

namespace giant {

/// Slack allowed on the total mass of a degree distribution. Admits
/// decimal-entered probabilities and tails truncated at a finite cutoff.
inline constexpr double kMassTolerance = 1e-9;

struct DegreeMass {
    int degree = 0;
    double prob = 0.0;

    friend bool operator==(const DegreeMass&, const DegreeMass&) = default;
};

/// Integer power by repeated squaring; pow(x, 0) == 1 for every x.
inline double ipow(double base, unsigned exponent) noexcept {
    double result = 1.0;
    while (exponent != 0) {
        if (exponent & 1u) {
            result *= base;
        }
        exponent >>= 1;
        base *= base;
    }
    return result;
}

/// Finite-support probability mass function over non-negative degrees.
///
/// Stored sparse and sorted by degree; zero-probability entries are dropped.
/// Immutable after construction, so it can be shared freely between threads.
/// Suffix sums of mass and first moment are cached so that generating
/// functions can stop early once the remaining terms are negligible.
class DegreePMF {
public:
    DegreePMF() = default;

    /// Validating constructor; see make_pmf.
    static DegreePMF from_entries(std::vector<DegreeMass> entries, std::string provenance = {}) {
        if (entries.empty()) {
            throw Error(Errc::InvalidInput, "degree distribution has no entries");
        }
        double sum = 0.0;
        for (const auto& e : entries) {
            if (e.degree < 0) {
                throw Error(Errc::InvalidInput, "negative degree " + std::to_string(e.degree));
            }
            if (!(e.prob >= 0.0)) {
                throw Error(Errc::NegativeProbability,
                            "probability of degree " + std::to_string(e.degree) + " is " +
                                std::to_string(e.prob));
            }
            sum += e.prob;
        }
        if (!(std::abs(sum - 1.0) <= kMassTolerance)) {
            throw Error(Errc::SumNotOne, "probabilities sum to " + std::to_string(sum));
        }
        const auto by_degree = [](const DegreeMass& a, const DegreeMass& b) { return a.degree < b.degree; };
        if (!std::is_sorted(entries.begin(), entries.end(), by_degree)) {
            std::sort(entries.begin(), entries.end(), by_degree);
        }
        for (std::size_t i = 1; i < entries.size(); ++i) {
            if (entries[i].degree == entries[i - 1].degree) {
                throw Error(Errc::DuplicateDegree,
                            "degree " + std::to_string(entries[i].degree) + " listed twice");
            }
        }
        std::erase_if(entries, [](const DegreeMass& e) { return e.prob == 0.0; });

        DegreePMF pmf;
        pmf.entries_ = std::move(entries);
        pmf.provenance_ = std::move(provenance);
        pmf.build_suffix_sums();
        return pmf;
    }

    std::span<const DegreeMass> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::string& provenance() const noexcept { return provenance_; }

    int min_degree() const noexcept { return entries_.empty() ? 0 : entries_.front().degree; }
    int max_degree() const noexcept { return entries_.empty() ? 0 : entries_.back().degree; }

    double prob(int degree) const noexcept {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), degree,
                                   [](const DegreeMass& e, int d) { return e.degree < d; });
        return (it != entries_.end() && it->degree == degree) ? it->prob : 0.0;
    }

    double total_mass() const noexcept { return mass_suffix_.empty() ? 0.0 : mass_suffix_.front(); }
    double mean() const noexcept { return moment_suffix_.empty() ? 0.0 : moment_suffix_.front(); }

    /// Mass carried by entries [index, size).
    double mass_from(std::size_t index) const noexcept {
        return index < mass_suffix_.size() ? mass_suffix_[index] : 0.0;
    }
    /// First moment carried by entries [index, size).
    double moment_from(std::size_t index) const noexcept {
        return index < moment_suffix_.size() ? moment_suffix_[index] : 0.0;
    }

    DegreePMF with_provenance(std::string provenance) const {
        DegreePMF copy = *this;
        copy.provenance_ = std::move(provenance);
        return copy;
    }

    friend bool operator==(const DegreePMF& a, const DegreePMF& b) noexcept {
        return a.entries_ == b.entries_;
    }

private:
    void build_suffix_sums() {
        const std::size_t n = entries_.size();
        mass_suffix_.assign(n, 0.0);
        moment_suffix_.assign(n, 0.0);
        double mass = 0.0;
        double moment = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            mass += entries_[i].prob;
            moment += entries_[i].degree * entries_[i].prob;
            mass_suffix_[i] = mass;
            moment_suffix_[i] = moment;
        }
    }

    std::vector<DegreeMass> entries_;
    std::vector<double> mass_suffix_;
    std::vector<double> moment_suffix_;
    std::string provenance_;
};

/// Build a validated PMF. Throws SumNotOne, NegativeProbability or
/// DuplicateDegree.
inline DegreePMF make_pmf(std::vector<DegreeMass> entries, std::string provenance = {}) {
    return DegreePMF::from_entries(std::move(entries), std::move(provenance));
}

inline DegreePMF point_mass(int degree, std::string provenance = {}) {
    return make_pmf({{degree, 1.0}}, std::move(provenance));
}

inline double mean(const DegreePMF& pmf) noexcept { return pmf.mean(); }

/// E[D(D-1)] / E[D]; the giant component exists iff this exceeds 1.
inline double critical_parameter(const DegreePMF& pmf) {
    const double mu = pmf.mean();
    if (!(mu > 0.0)) {
        throw Error(Errc::ZeroMean, "critical parameter needs a positive mean");
    }
    double factorial_moment = 0.0;
    for (const auto& e : pmf.entries()) {
        factorial_moment += static_cast<double>(e.degree) * (e.degree - 1) * e.prob;
    }
    return factorial_moment / mu;
}

/// p~_d = (d + 1) p_{d+1} / mu: the offspring law seen along a uniformly
/// chosen half-edge.
inline DegreePMF size_biased_downshift(const DegreePMF& pmf) {
    const double mu = pmf.mean();
    if (!(mu > 0.0)) {
        throw Error(Errc::ZeroMean, "size-biasing needs a positive mean");
    }
    std::vector<DegreeMass> shifted;
    shifted.reserve(pmf.size());
    for (const auto& e : pmf.entries()) {
        if (e.degree > 0) {
            shifted.push_back({e.degree - 1, e.degree * e.prob / mu});
        }
    }
    return make_pmf(std::move(shifted), pmf.provenance().empty() ? "" : pmf.provenance() + "~");
}

namespace detail {

inline void check_unit_interval(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(Errc::DomainError, "generating function argument " + std::to_string(s) +
                                           " outside [0, 1]");
    }
}

// Remaining terms are dropped once their upper bound falls below this
// fraction of the accumulated value.
inline constexpr double kSeriesCutoff = 1e-18;

} // namespace detail

/// g(s) = sum_d p_d s^d, evaluated in ascending degree order.
inline double pgf(const DegreePMF& pmf, double s) {
    detail::check_unit_interval(s);
    if (s == 1.0) {
        return pmf.total_mass();
    }
    const auto entries = pmf.entries();
    double acc = 0.0;
    double power = 1.0;
    int exponent = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        power *= ipow(s, static_cast<unsigned>(entries[i].degree - exponent));
        exponent = entries[i].degree;
        acc += entries[i].prob * power;
        if (power * pmf.mass_from(i + 1) <= detail::kSeriesCutoff * acc) {
            break;
        }
    }
    return acc;
}

/// g'(s) = sum_d d p_d s^(d-1).
inline double pgf_prime(const DegreePMF& pmf, double s) {
    detail::check_unit_interval(s);
    if (s == 1.0) {
        return pmf.mean();
    }
    const auto entries = pmf.entries();
    double acc = 0.0;
    double power = 1.0;
    int exponent = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const int d = entries[i].degree;
        if (d == 0) {
            continue;
        }
        power *= ipow(s, static_cast<unsigned>(d - 1 - exponent));
        exponent = d - 1;
        acc += d * entries[i].prob * power;
        if (power * pmf.moment_from(i + 1) <= detail::kSeriesCutoff * acc) {
            break;
        }
    }
    return acc;
}

/// g''(s) = sum_d d (d-1) p_d s^(d-2). Used for Newton polishing only.
inline double pgf_second(const DegreePMF& pmf, double s) {
    detail::check_unit_interval(s);
    const auto entries = pmf.entries();
    const double max_degree = pmf.max_degree();
    double acc = 0.0;
    double power = 1.0;
    int exponent = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const int d = entries[i].degree;
        if (d < 2) {
            continue;
        }
        power *= ipow(s, static_cast<unsigned>(d - 2 - exponent));
        exponent = d - 2;
        acc += static_cast<double>(d) * (d - 1) * entries[i].prob * power;
        if (power * max_degree * pmf.moment_from(i + 1) <= detail::kSeriesCutoff * acc) {
            break;
        }
    }
    return acc;
}

} // namespace giant
