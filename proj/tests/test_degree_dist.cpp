#include <gtest/gtest.h>

#include <cmath>

#include "giant/degree_dist.hpp"
#include "oracles.hpp"

using namespace giant;

namespace {

DegreePMF half_one_half_three() { return make_pmf({{1, 0.5}, {3, 0.5}}); }

void expect_code(Errc code, const auto& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << errc_name(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace

TEST(MakePmf, PointMass) {
    const DegreePMF pmf = make_pmf({{3, 1.0}});
    ASSERT_EQ(pmf.size(), 1u);
    EXPECT_EQ(pmf.entries()[0], (DegreeMass{3, 1.0}));
}

TEST(MakePmf, TwoPointSortedAndZerosDropped) {
    const DegreePMF pmf = make_pmf({{3, 0.5}, {7, 0.0}, {1, 0.5}});
    ASSERT_EQ(pmf.size(), 2u);
    EXPECT_EQ(pmf.entries()[0].degree, 1);
    EXPECT_EQ(pmf.entries()[1].degree, 3);
    EXPECT_DOUBLE_EQ(pmf.prob(3), 0.5);
    EXPECT_EQ(pmf.prob(7), 0.0);
}

TEST(MakePmf, Errors) {
    expect_code(Errc::SumNotOne, [] { make_pmf({{1, 0.5}, {3, 0.4}}); });
    expect_code(Errc::NegativeProbability, [] { make_pmf({{1, 1.2}, {3, -0.2}}); });
    expect_code(Errc::DuplicateDegree, [] { make_pmf({{2, 0.5}, {2, 0.5}}); });
    expect_code(Errc::InvalidInput, [] { make_pmf({}); });
    expect_code(Errc::InvalidInput, [] { make_pmf({{-1, 1.0}}); });
}

TEST(MakePmf, AcceptsMassWithinTolerance) {
    EXPECT_NO_THROW(make_pmf({{1, 0.5}, {3, 0.5 - 5e-10}}));
    EXPECT_THROW(make_pmf({{1, 0.5}, {3, 0.5 - 5e-9}}), Error);
}

TEST(Mean, Examples) {
    EXPECT_DOUBLE_EQ(mean(make_pmf({{3, 1.0}})), 3.0);
    EXPECT_DOUBLE_EQ(mean(half_one_half_three()), 2.0);
    EXPECT_NEAR(mean(make_pmf({{1, 0.31}, {2, 0.31}, {3, 0.21}, {4, 0.17}})), 2.24, 1e-12);
}

TEST(CriticalParameter, Examples) {
    EXPECT_DOUBLE_EQ(critical_parameter(make_pmf({{3, 1.0}})), 2.0);
    EXPECT_DOUBLE_EQ(critical_parameter(half_one_half_three()), 1.5);
    EXPECT_DOUBLE_EQ(critical_parameter(make_pmf({{2, 1.0}})), 1.0);
    expect_code(Errc::ZeroMean, [] { critical_parameter(make_pmf({{0, 1.0}})); });
}

TEST(SizeBiasedDownshift, Examples) {
    EXPECT_EQ(size_biased_downshift(make_pmf({{3, 1.0}})), make_pmf({{2, 1.0}}));
    const DegreePMF shifted = size_biased_downshift(half_one_half_three());
    ASSERT_EQ(shifted.size(), 2u);
    EXPECT_NEAR(shifted.prob(0), 0.25, 1e-15);
    EXPECT_NEAR(shifted.prob(2), 0.75, 1e-15);
    EXPECT_EQ(size_biased_downshift(make_pmf({{1, 1.0}})), make_pmf({{0, 1.0}}));
    expect_code(Errc::ZeroMean, [] { size_biased_downshift(make_pmf({{0, 1.0}})); });
}

TEST(Pgf, Examples) {
    const DegreePMF pmf = half_one_half_three();
    EXPECT_NEAR(pgf(pmf, 1.0 / 3.0), 5.0 / 27.0, 1e-15);
    EXPECT_DOUBLE_EQ(pgf(pmf, 1.0), 1.0);
    EXPECT_NEAR(pgf_prime(pmf, 1.0 / 3.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(pgf_second(pmf, 0.5), 3.0 * 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(pgf(pmf, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(pgf(make_pmf({{0, 0.25}, {4, 0.75}}), 0.0), 0.25);
}

TEST(Pgf, DomainError) {
    const DegreePMF pmf = half_one_half_three();
    expect_code(Errc::DomainError, [&] { pgf(pmf, -0.1); });
    expect_code(Errc::DomainError, [&] { pgf_prime(pmf, 1.0000001); });
    expect_code(Errc::DomainError, [&] { pgf(pmf, std::nan("")); });
}

TEST(Pgf, LargeDegreesMatchDenseEvaluation) {
    const DegreePMF pmf = make_pmf({{1, 0.4}, {50, 0.3}, {1000, 0.2}, {100000, 0.1}});
    for (double s : {0.0, 0.1, 0.5, 0.9, 0.99, 0.99999, 1.0}) {
        EXPECT_NEAR(pgf(pmf, s), oracle::dense_pgf(pmf, s), 1e-13) << s; // pow vs repeated squaring
        EXPECT_NEAR(pgf_prime(pmf, s), oracle::dense_pgf_prime(pmf, s), 1e-10 * (1 + oracle::dense_pgf_prime(pmf, s))) << s;
    }
}

TEST(Ipow, Basics) {
    EXPECT_EQ(ipow(0.0, 0), 1.0);
    EXPECT_EQ(ipow(2.0, 10), 1024.0);
    EXPECT_DOUBLE_EQ(ipow(0.5, 3), 0.125);
}

TEST(DegreeDistProperty, DownshiftMeanEqualsNu) {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const DegreePMF pmf = oracle::random_pmf(rng, 0, 40, oracle::uniform_int(rng, 2, 10));
        if (!(pmf.mean() > 0.0)) continue;
        EXPECT_NEAR(mean(size_biased_downshift(pmf)), critical_parameter(pmf), 1e-9);
    }
}

TEST(DegreeDistProperty, PgfShape) {
    oracle::Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const DegreePMF pmf = oracle::random_pmf(rng, 0, 60, oracle::uniform_int(rng, 1, 12));
        EXPECT_NEAR(pgf(pmf, 0.0), pmf.prob(0), 1e-15);
        EXPECT_NEAR(pgf(pmf, 1.0), 1.0, 1e-9);
        double previous = -1.0;
        for (int k = 0; k <= 100; ++k) {
            const double s = k / 100.0;
            const double value = pgf(pmf, s);
            EXPECT_GE(value, previous);
            EXPECT_NEAR(value, oracle::dense_pgf(pmf, s), 1e-12);
            previous = value;
        }
    }
}

TEST(DegreeDistProperty, GeneratingFunctionIdentity) {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const DegreePMF pmf = oracle::random_pmf(rng, 0, 30, oracle::uniform_int(rng, 2, 8));
        if (!(pmf.mean() > 0.0)) continue;
        const DegreePMF shifted = size_biased_downshift(pmf);
        for (int k = 0; k <= 100; ++k) {
            const double s = k / 100.0;
            EXPECT_NEAR(pgf_prime(pmf, s) / pmf.mean(), pgf(shifted, s), 1e-9);
        }
    }
}
