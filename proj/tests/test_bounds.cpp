#include <gtest/gtest.h>

#include <cmath>

#include "maxsmooth/bounds.hpp"

using namespace maxsmooth;

namespace {

// Exact maxima enumerated offline with rational arithmetic over every chain 1 -> d.
struct ExactGamma {
    std::size_t d;
    std::int64_t num;
    std::int64_t den;
};

constexpr ExactGamma exact_values[] = {
    {2, 1, 4},     {3, 4, 9},     {4, 9, 16},      {5, 16, 25},  {6, 25, 36},   {7, 340, 441},
    {8, 481, 576}, {9, 8, 9},     {10, 841, 900},  {11, 1060, 1089}, {12, 145, 144},
};

} // namespace

TEST(Gamma, SmallDimensions) {
    const auto g1 = maxsmooth::gamma(1);
    EXPECT_EQ(g1.value, 0.0);
    EXPECT_EQ(g1.indices, (std::vector<std::size_t>{1}));

    EXPECT_EQ(maxsmooth::gamma(2).value, 0.25);
    EXPECT_DOUBLE_EQ(maxsmooth::gamma(3).value, 4.0 / 9.0);

    const auto g4 = maxsmooth::gamma(4);
    EXPECT_EQ(g4.value, 9.0 / 16.0);
    EXPECT_EQ(g4.indices, (std::vector<std::size_t>{1, 4}));
    EXPECT_THROW(maxsmooth::gamma(0), DomainError);
}

TEST(Gamma, MatchesExactRationalTable) {
    for (const auto& e : exact_values) {
        const Rational expected(e.num, e.den);
        EXPECT_EQ(gamma_bruteforce_exact(e.d), expected) << "d=" << e.d;
        const double exact = static_cast<double>(e.num) / static_cast<double>(e.den);
        EXPECT_NEAR(maxsmooth::gamma(e.d).value, exact, 1e-15) << "d=" << e.d;
    }
}

TEST(Gamma, HundredMatchesRationalRecurrence) {
    // Exact value 2692081/1440000 from the recurrence run in rational arithmetic.
    EXPECT_NEAR(maxsmooth::gamma(100).value, 2692081.0 / 1440000.0, 1e-14);
}

TEST(Gamma, TwoAndThreeAreExactlyTheTwoTermChain) {
    EXPECT_EQ(gamma_bruteforce_exact(2), Rational(1, 4));
    EXPECT_EQ(gamma_bruteforce_exact(3), Rational(4, 9));
    // (1,3) beats (1,2,3): 4/9 > 1/4 + 1/9
    EXPECT_GT(Rational(4, 9), Rational(1, 4) + Rational(1, 9));
}

TEST(GammaBruteforce, AgreesWithRecurrence) {
    EXPECT_EQ(gamma_bruteforce(2), 0.25);
    EXPECT_NEAR(gamma_bruteforce(3), 4.0 / 9.0, 1e-16);
    for (std::size_t d = 2; d <= 20; ++d) {
        EXPECT_NEAR(maxsmooth::gamma(d).value, gamma_bruteforce(d), 1e-12) << "d=" << d;
    }
    EXPECT_THROW(gamma_bruteforce(1), DomainError);
    EXPECT_THROW(gamma_bruteforce(23), DomainError);
}

TEST(Gamma, CertificateRecomputes) {
    const auto table = gamma_table(3000);
    for (std::size_t d = 1; d <= 3000; d += 37) {
        const auto cert = table.certificate(d);
        ASSERT_EQ(cert.indices.front(), 1u);
        ASSERT_EQ(cert.indices.back(), d);
        for (std::size_t l = 1; l < cert.indices.size(); ++l) ASSERT_LT(cert.indices[l - 1], cert.indices[l]);
        EXPECT_EQ(partition_sum(cert.indices), cert.value) << "d=" << d;
    }
}

TEST(Gamma, TiesGoToSmallestPredecessor) {
    // At d = 2 only i = 1 exists; at every d the recorded predecessor must be the first maximizer.
    const auto table = gamma_table(400);
    for (std::size_t d = 2; d <= 400; ++d) {
        const std::size_t pred = table.predecessor[d];
        for (std::size_t i = 1; i < pred; ++i) {
            EXPECT_LT(table.value[i] + partition_term(i, d), table.value[d]) << "d=" << d << " i=" << i;
        }
    }
}

TEST(Gamma, NondecreasingInDimension) {
    const auto table = gamma_table(10000);
    for (std::size_t d = 2; d <= 10000; ++d) ASSERT_GE(table.value[d], table.value[d - 1]) << "d=" << d;
}

TEST(Gamma, PrunedSearchIsBitIdentical) {
    const auto full = gamma_table(20000, GammaMethod::Exhaustive);
    const auto pruned = gamma_table(20000, GammaMethod::Pruned);
    ASSERT_EQ(full.value.size(), pruned.value.size());
    for (std::size_t d = 1; d <= 20000; ++d) {
        ASSERT_EQ(full.value[d], pruned.value[d]) << "d=" << d;
        ASSERT_EQ(full.predecessor[d], pruned.predecessor[d]) << "d=" << d;
    }
}

TEST(Gamma, ThreadedExhaustiveMatchesSequential) {
    // A dimension above the threading threshold, split across three workers.
    std::vector<double> values(70001, 0.0);
    const auto reference = gamma_table(2000);
    for (std::size_t i = 1; i <= 2000; ++i) values[i] = reference.value[i];
    // Fill the remainder with a nondecreasing profile so the step has a meaningful argmax.
    for (std::size_t i = 2001; i < values.size(); ++i) values[i] = values[i - 1] + 1e-7;
    const auto threaded = detail::exhaustive_step(values, 70000, 3);
    const auto sequential = detail::best_in_range(values, 70000, 1, 69999);
    EXPECT_EQ(threaded.value, sequential.value);
    EXPECT_EQ(threaded.index, sequential.index);
}

TEST(Gamma, BoundsAroundRecurrence) {
    const auto table = gamma_table(5000);
    for (std::size_t d = 2; d <= 5000; ++d) {
        EXPECT_LE(two_term_lower(d), table.value[d] + 1e-15);
        EXPECT_LE(table.value[d], 0.5 * std::log(static_cast<double>(d)));
    }
    EXPECT_LT(table.value[2], 0.5 * std::log(2.0));
    EXPECT_LT(table.value[3], 0.5 * std::log(3.0));
}

TEST(BetaRoot, ResidualAndConstants) {
    const auto c = beta_root(1e-10);
    EXPECT_GT(c.beta, 0.0);
    EXPECT_LT(c.beta, 1.0);
    EXPECT_LE(std::abs(2.0 * c.beta * std::log(c.beta) - c.beta + 1.0), 1e-9);
    // Reported values 0.28467 and 0.40726.
    EXPECT_NEAR(c.beta, 0.28467, 5e-6);
    EXPECT_NEAR(c.slope, 0.40726, 5e-6);
    EXPECT_DOUBLE_EQ(c.slope, 2.0 * c.beta * (1.0 - c.beta));
    // High-precision root computed offline.
    EXPECT_NEAR(c.beta, 0.28466813704083846, 1e-10);
    EXPECT_THROW(beta_root(0.0), DomainError);
    EXPECT_THROW(beta_root(-1.0), DomainError);
}

TEST(Sandwich, Examples) {
    const auto s1 = asymptotic_sandwich(1);
    EXPECT_EQ(s1.upper, 0.0);
    EXPECT_EQ(s1.lower, 0.0);

    const auto slope = beta_root(1e-10).slope;
    const auto s100 = asymptotic_sandwich(100);
    EXPECT_NEAR(s100.upper, slope * std::log(100.0), 1e-15);
    EXPECT_NEAR(s100.lower, slope * std::log(100.0) - 1.98, 1e-14);
    const double g100 = maxsmooth::gamma(100).value;
    EXPECT_LE(s100.lower, g100);
    EXPECT_LE(g100, s100.upper);
    EXPECT_THROW(asymptotic_sandwich(0), DomainError);
}

TEST(Sandwich, ContainsGammaUpToTenThousand) {
    const auto table = gamma_table(10000);
    for (std::size_t d = 1; d <= 10000; ++d) {
        const auto s = asymptotic_sandwich(d);
        ASSERT_LE(s.lower, table.value[d] + 1e-9) << "d=" << d;
        ASSERT_LE(table.value[d], s.upper + 1e-9) << "d=" << d;
    }
}

TEST(TwoTermLower, Examples) {
    EXPECT_EQ(two_term_lower(2), 0.25);
    EXPECT_EQ(two_term_lower(1), 0.0);
    EXPECT_EQ(two_term_lower(4), 9.0 / 16.0);
    EXPECT_EQ(two_term_lower(4), gamma_bruteforce(4));
}

TEST(PartitionSum, RejectsInvalidChains) {
    const std::vector<std::size_t> bad_start{2, 4};
    const std::vector<std::size_t> not_increasing{1, 3, 3};
    EXPECT_THROW(partition_sum(bad_start), DomainError);
    EXPECT_THROW(partition_sum(not_increasing), DomainError);
}
