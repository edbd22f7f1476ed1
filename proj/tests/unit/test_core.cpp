#include <cmath>
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mallows/core.hpp"
#include "mallows/errors.hpp"
#include "mallows/oracle.hpp"
#include "mallows/rng.hpp"

using namespace mallows;

namespace {

Ranking from_names(std::initializer_list<AltId> one_based) {
    std::vector<AltId> order;
    for (AltId a : one_based) order.push_back(a - 1);
    return Ranking(order);
}

Ranking random_ranking(std::size_t m, SplitMix64& rng) {
    std::vector<AltId> order(m);
    std::iota(order.begin(), order.end(), AltId{0});
    for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_below(i)]);
    return Ranking(order);
}

} // namespace

TEST(Ranking, RejectsNonPermutations) {
    EXPECT_THROW(Ranking(std::vector<AltId>{0, 0, 1}), DomainError);
    EXPECT_THROW(Ranking(std::vector<AltId>{0, 2}), DomainError);
    EXPECT_NO_THROW(Ranking(std::vector<AltId>{1, 0}));
}

TEST(Ranking, PositionsAreOneBased) {
    const Ranking v = from_names({2, 3, 1});
    EXPECT_EQ(v.at(1), 1u);
    EXPECT_EQ(v.position_of(0), 3u);
    EXPECT_EQ(v.position_of(1), 1u);
    EXPECT_THROW(v.at(0), DomainError);
    EXPECT_THROW(v.at(4), DomainError);
}

TEST(KendallTau, Examples) {
    EXPECT_EQ(kendall_tau(from_names({1, 2, 3}), from_names({1, 2, 3})), 0u);
    EXPECT_EQ(kendall_tau(from_names({1, 2, 3}), from_names({3, 2, 1})), 3u);
    EXPECT_EQ(kendall_tau(from_names({1, 2, 3, 4}), from_names({2, 1, 3, 4})), 1u);
    EXPECT_THROW(kendall_tau(Ranking::identity(3), Ranking::identity(4)), DomainError);
}

TEST(KendallTau, MatchesPairCountOnAllPairsUpToSix) {
    for (std::size_t m = 1; m <= 6; ++m) {
        std::vector<Ranking> all;
        std::vector<AltId> order(m);
        std::iota(order.begin(), order.end(), AltId{0});
        do all.emplace_back(order);
        while (std::next_permutation(order.begin(), order.end()));
        for (const Ranking& u : all) {
            for (const Ranking& v : all) ASSERT_EQ(kendall_tau(u, v), oracle::brute_force_kendall_tau(u, v));
        }
    }
}

TEST(KendallTau, IsAMetric) {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 1 + rng.uniform_below(8);
        const Ranking u = random_ranking(m, rng);
        const Ranking v = random_ranking(m, rng);
        const Ranking w = random_ranking(m, rng);
        EXPECT_EQ(kendall_tau(u, v), kendall_tau(v, u));
        EXPECT_EQ(kendall_tau(u, v) == 0, u == v);
        EXPECT_LE(kendall_tau(u, w), kendall_tau(u, v) + kendall_tau(v, w));
        EXPECT_LE(kendall_tau(u, v), m * (m - 1) / 2);
    }
}

TEST(Profile, Validates) {
    EXPECT_THROW(Profile::with_default_alternatives({}), DomainError);
    EXPECT_THROW(Profile::with_default_alternatives({Ranking::identity(2), Ranking::identity(3)}), DomainError);
    const Profile p = Profile::with_default_alternatives({Ranking::identity(3)});
    EXPECT_EQ(p.alternatives()[2].id, 3u);
    EXPECT_EQ(p.alternatives()[2].name, "c3");
}

TEST(RestrictProfile, PreservesOrder) {
    const Profile p = Profile::with_default_alternatives({from_names({2, 1, 3})});
    const std::vector<AltId> keep{0, 2};
    const Profile r = restrict_profile(p, keep);
    EXPECT_EQ(r.num_alternatives(), 2u);
    EXPECT_EQ(r[0], from_names({1, 2}));
    EXPECT_EQ(r.alternatives()[1].id, 3u);
}

TEST(RestrictProfile, FullSetIsIdentity) {
    const Profile p = Profile::with_default_alternatives({from_names({2, 1, 3}), from_names({3, 1, 2})});
    const std::vector<AltId> keep{2, 0, 1};
    EXPECT_EQ(restrict_profile(p, keep), p);
}

TEST(RestrictProfile, IdentityStaysIdentity) {
    const Profile p = Profile::with_default_alternatives({Ranking::identity(6), Ranking::identity(6)});
    const std::vector<AltId> keep{1, 4, 5};
    const Profile r = restrict_profile(p, keep);
    for (const Ranking& v : r.rankings()) EXPECT_EQ(v, Ranking::identity(3));
}

TEST(RestrictProfile, Errors) {
    const Profile p = Profile::with_default_alternatives({Ranking::identity(3)});
    EXPECT_THROW(restrict_profile(p, std::vector<AltId>{}), DomainError);
    EXPECT_THROW(restrict_profile(p, std::vector<AltId>{3}), DomainError);
}

TEST(RestrictProfile, NeverIncreasesDistance) {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 2 + rng.uniform_below(7);
        const Profile p = Profile::with_default_alternatives({random_ranking(m, rng), random_ranking(m, rng)});
        std::vector<AltId> keep;
        for (AltId a = 0; a < m; ++a) {
            if (rng.uniform01() < 0.6) keep.push_back(a);
        }
        if (keep.empty()) keep.push_back(0);
        const Profile r = restrict_profile(p, keep);
        EXPECT_LE(kendall_tau(r[0], r[1]), kendall_tau(p[0], p[1]));
    }
}

TEST(RandomRestriction, DeterministicAndRangeChecked) {
    SplitMix64 seed_rng(3);
    std::vector<Ranking> rankings;
    for (int i = 0; i < 4; ++i) rankings.push_back(random_ranking(10, seed_rng));
    const Profile p = Profile::with_default_alternatives(rankings);
    SplitMix64 a(42), b(42);
    EXPECT_EQ(random_restriction(p, 4, a), random_restriction(p, 4, b));
    SplitMix64 c(1);
    EXPECT_EQ(random_restriction(p, 10, c), p);
    EXPECT_THROW(random_restriction(p, 0, c), DomainError);
    EXPECT_THROW(random_restriction(p, 11, c), DomainError);
}

TEST(RandomRestriction, SameSubsetForEveryRanking) {
    SplitMix64 seed_rng(8);
    const Profile p = Profile::with_default_alternatives({random_ranking(12, seed_rng), random_ranking(12, seed_rng)});
    SplitMix64 rng(9);
    const Profile r = random_restriction(p, 5, rng);
    std::set<std::uint64_t> ids;
    for (const Alternative& a : r.alternatives()) ids.insert(a.id);
    EXPECT_EQ(ids.size(), 5u);
    for (std::size_t i = 0; i < 2; ++i) {
        // Relative order of the survivors matches the original ranking.
        std::vector<std::size_t> original_pos;
        for (AltId a : r[i].order()) original_pos.push_back(p[i].position_of(static_cast<AltId>(r.alternatives()[a].id - 1)));
        EXPECT_TRUE(std::is_sorted(original_pos.begin(), original_pos.end()));
    }
}

TEST(RandomRestriction, SurvivalFrequencyIsBinomial) {
    const std::size_t m = 10;
    const std::size_t keep = 3;
    const std::size_t trials = 10000;
    const Profile p = Profile::with_default_alternatives({Ranking::identity(m)});
    std::vector<std::size_t> survived(m, 0);
    SplitMix64 rng(2024);
    for (std::size_t t = 0; t < trials; ++t) {
        const Profile r = random_restriction(p, keep, rng);
        for (const Alternative& a : r.alternatives()) ++survived[a.id - 1];
    }
    const double q = static_cast<double>(keep) / m;
    const double sigma = std::sqrt(trials * q * (1 - q));
    for (std::size_t a = 0; a < m; ++a) {
        EXPECT_NEAR(static_cast<double>(survived[a]), trials * q, 3.0 * sigma) << "alternative " << a;
    }
}

TEST(SplitMix64, ReferenceOutputs) {
    // First outputs of Vigna's splitmix64.c seeded with 0.
    SplitMix64 rng(0);
    EXPECT_EQ(rng(), 0xe220a8397b1dcdafull);
    EXPECT_EQ(rng(), 0x6e789e6aa1b965f4ull);
    EXPECT_EQ(rng(), 0x06c45d188009454full);
}

TEST(SplitMix64, UniformBelowStaysInRange) {
    SplitMix64 rng(77);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 5}) {
        for (int i = 0; i < 1000; ++i) ASSERT_LT(rng.uniform_below(bound), std::max<std::uint64_t>(bound, 1));
    }
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}
