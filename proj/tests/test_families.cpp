#include <gtest/gtest.h>

#include <cmath>

#include "giant/io.hpp"
#include "giant/reproduce.hpp"
#include "oracles.hpp"

using namespace giant;

TEST(ThreePoint, LowEndpoint) {
    const FamilyPoint pt = three_point_family({1, 2, 3}, 2.1, 0.0);
    EXPECT_EQ(pt.pmf().prob(1), 0.0);
    EXPECT_NEAR(pt.pmf().prob(2), 0.9, 1e-12);
    EXPECT_NEAR(pt.pmf().prob(3), 0.1, 1e-12);
    EXPECT_EQ(pt.xi, 1.0);
}

TEST(ThreePoint, HighEndpoint) {
    const FamilyPoint pt = three_point_family({1, 2, 3}, 2.1, 0.45);
    EXPECT_EQ(pt.pmf().prob(2), 0.0);
    EXPECT_NEAR(pt.pmf().prob(3), 0.55, 1e-12);
    // z = 3/11 solves 1.65 s^2 - 2.1 s + 0.45 = 0
    const double z = 3.0 / 11.0;
    EXPECT_NEAR(pt.xi, 1.0 - 0.45 * z - 0.55 * z * z * z, 1e-12);
    EXPECT_NEAR(pt.xi, 0.8661, 1e-4);
}

TEST(ThreePoint, Relations) {
    for (double c : {0.05, 0.2, 0.33}) {
        const FamilyPoint pt = three_point_family({1, 2, 3}, 2.1, c);
        EXPECT_NEAR(pt.pmf().prob(3), 0.1 + c, 1e-12);
        EXPECT_NEAR(pt.pmf().prob(2), 0.9 - 2 * c, 1e-12);
        EXPECT_NEAR(pt.pmf().mean(), 2.1, 1e-12);
    }
}

TEST(ThreePoint, WideSupportEndpoint) {
    const ThreePointSystem sys{{1, 2, 10}, 2.1, 0.0, 0.0};
    const auto [lo, hi] = sys.control_range();
    EXPECT_EQ(lo, 0.0);
    EXPECT_NEAR(hi, 7.9 / 9.0, 1e-12);
    const FamilyPoint pt = three_point_family({1, 2, 10}, 2.1, hi);
    EXPECT_NEAR(pt.pmf().prob(10), 1.1 / 9.0, 1e-12);
    EXPECT_NEAR(pt.xi, 0.633, 1e-3);
    EXPECT_LT(pt.xi, 0.65);
}

TEST(ThreePoint, Errors) {
    try {
        three_point_family({1, 2, 3}, 2.1, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InfeasibleControl);
    }
    EXPECT_THROW(three_point_family({1, 2, 3}, 2.1, -0.01), Error);
    EXPECT_THROW(three_point_family({2, 1, 3}, 2.1, 0.1), Error);
}

TEST(FixedTail, PoissonHeavyStart) {
    const TailFragment tail = materialize_tail(TailSpec{PoissonTail{7.0, 11}});
    const FamilyPoint pt = fixed_tail_family(tail, {1, 2, 3}, 3.5, 0.0);
    // p2 + p3 = 1 - T, 2 p2 + 3 p3 = 3.5 - M
    const double p3 = 3.5 - tail.total_mean - 2.0 * (1.0 - tail.total_mass);
    EXPECT_NEAR(pt.pmf().prob(3), p3, 1e-12);
    EXPECT_NEAR(pt.pmf().prob(2), 1.0 - tail.total_mass - p3, 1e-12);
    EXPECT_NEAR(pt.pmf().prob(3), 0.511, 1e-3);
    EXPECT_NEAR(pt.pmf().prob(2), 0.3905, 1e-3);
    EXPECT_NEAR(pt.pmf().mean(), 3.5, 1e-9);
}

TEST(FixedTail, PowerLawLowEndInfeasible) {
    // With tail mean 2 (zeta(2) - 1 - 1/4 - 1/9), degrees {2, 3} alone carry too much mean.
    const TailSpec spec{PowerLawTail{2.0, 3.0, 4}};
    try {
        fixed_tail_family(spec, {1, 2, 3}, 2.2, 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InfeasibleControl);
    }
    const TailFragment tail = materialize_tail(spec);
    const ThreePointSystem sys{{1, 2, 3}, 2.2, tail.total_mass, tail.total_mean};
    const double lo = sys.control_range().first;
    EXPECT_NEAR(lo, (1.0 - tail.total_mass) - (2.2 - tail.total_mean - (1.0 - tail.total_mass)), 1e-12);
    const FamilyPoint pt = fixed_tail_family(tail, {1, 2, 3}, 2.2, lo);
    EXPECT_EQ(pt.low[2].prob, 0.0);
    EXPECT_GT(pt.xi, 0.0);
    EXPECT_LE(pt.xi, 1.0);
    EXPECT_TRUE(std::isinf(pt.nu));
    EXPECT_EQ(pt.pmf().prob(4), 2.0 / 64.0);
}

TEST(FixedTail, TailMustSitAboveLowSupport) {
    EXPECT_THROW(fixed_tail_family(TailSpec{PoissonTail{2.0, 3}}, {1, 2, 3}, 2.2, 0.1), Error);
}

TEST(Sweeps, ThreePointControlSweep) {
    const auto sweep = sweep_three_point({1, 2, 3}, 2.1, 0.01);
    ASSERT_EQ(sweep.size(), 46u);
    EXPECT_EQ(sweep.front().xi, 1.0);
    EXPECT_NEAR(sweep.back().xi, 0.8661, 1e-4);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        EXPECT_LT(sweep[i].xi, sweep[i - 1].xi);
        EXPECT_GT(sweep[i].nu, sweep[i - 1].nu);
        if (i >= 2) {
            EXPECT_NEAR(sweep[i].nu - 2 * sweep[i - 1].nu + sweep[i - 2].nu, 0.0, 1e-12);
        }
    }
}

TEST(Sweeps, TailFamiliesDecreaseInControl) {
    for (const std::string which : {"2a", "2b"}) {
        for (const auto& [name, sweep] : figure_sweeps(which)) {
            if (which == "2b" && name == "powerlaw") continue; // empty, see below
            ASSERT_GT(sweep.size(), 5u) << which << " " << name;
            for (std::size_t i = 1; i < sweep.size(); ++i) {
                EXPECT_LT(sweep[i].xi, sweep[i - 1].xi) << which << " " << name << " " << i;
            }
        }
    }
}

TEST(Sweeps, HeavyPowerLawTailLeavesNoRoomAtMeanThreePointFive) {
    // 5 d^-2.5 from degree 11 has mean about 3.08 and mass about 0.098: the
    // remaining 0.902 of mass would need mean at least 0.902, but only 0.42 is left.
    const TailFragment tail = materialize_tail(TailSpec{PowerLawTail{5.0, 2.5, 11}});
    EXPECT_NEAR(tail.total_mean, 3.08, 0.01);
    EXPECT_GT(1.0 - tail.total_mass, 3.5 - tail.total_mean);
    EXPECT_TRUE(sweep_fixed_tail(tail, {1, 2, 3}, 3.5, 0.01).empty());
    EXPECT_TRUE(figure_sweeps("2b")[1].second.empty());
}

TEST(Sweeps, OffGridEndpointIncluded) {
    const auto sweep = sweep_three_point({1, 2, 10}, 2.1, 0.01);
    EXPECT_NEAR(sweep.back().control, 7.9 / 9.0, 1e-12);
    EXPECT_NEAR(sweep[sweep.size() - 2].control, 0.87, 1e-12);
}

TEST(FamilyProperty, MeanAndNoZeroDegree) {
    for (const std::string which : {"1a", "1b", "2a", "2b"}) {
        const double mu = which == "2b" ? 3.5 : (which == "2a" ? 2.2 : 2.1);
        for (const auto& [name, sweep] : figure_sweeps(which, 0.02)) {
            for (const auto& pt : sweep) {
                EXPECT_EQ(pt.mu, mu);
                double mass = 0.0, moment = 0.0;
                for (const auto& e : pt.low) {
                    EXPECT_GE(e.degree, 1);
                    mass += e.prob;
                    moment += e.degree * e.prob;
                }
                if (pt.tail) {
                    EXPECT_GE(pt.tail->min_degree, 1);
                    mass += pt.tail->total_mass;
                    moment += pt.tail->total_mean;
                } else {
                    EXPECT_NEAR(pt.pmf().mean(), mu, 1e-9);
                }
                EXPECT_NEAR(mass, 1.0, 1e-12);
                EXPECT_NEAR(moment, mu, 1e-9);
            }
        }
    }
}

TEST(FamilyProperty, TruncatedTailMeanDeficitIsSmall) {
    // The explicit pmf stops at the tail cutoff; its mean falls short of the
    // class mean only by the omitted tail contribution.
    const TailFragment tail = materialize_tail(TailSpec{PowerLawTail{5.0, 2.5, 11}});
    for (const auto& pt : sweep_fixed_tail(tail, {1, 2, 3}, 3.5, 0.1)) {
        EXPECT_NEAR(pt.pmf().mean() + tail.omitted_mean(), 3.5, 1e-9);
    }
}

TEST(FamilyCsv, EmptySweepIsHeaderOnly) {
    EXPECT_EQ(family_csv({}), "control,xi,nu\n");
}
