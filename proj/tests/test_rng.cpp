#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "pathlaw/rng.hpp"

using namespace pathlaw;

TEST(SplitMix, KnownSequenceFromZero) {
    std::uint64_t s = 0;
    EXPECT_EQ(splitmix64(s), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(splitmix64(s), 0x6e789e6aa1b965f4ULL);
}

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        differs = differs || x != c.next();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, DerivedSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i)
        seen.insert(derive_seed(7, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(derive_seed(7, 0), derive_seed(8, 0));
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Rng, UniformRanges) {
    Rng r(1);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double v = r.uniform_open();
        ASSERT_GT(v, 0.0);
        ASSERT_LT(v, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, BelowIsUniform) {
    Rng r(2);
    const std::uint64_t k = 7;
    const int n = 70000;
    std::vector<int> hits(k);
    for (int i = 0; i < n; ++i) {
        const auto x = r.below(k);
        ASSERT_LT(x, k);
        ++hits[x];
    }
    double chi2 = 0.0;
    for (int h : hits)
        chi2 += (h - n / 7.0) * (h - n / 7.0) / (n / 7.0);
    EXPECT_LT(chi2, 22.5); // 6 d.o.f., p ~ 0.001
    EXPECT_EQ(r.below(1), 0u);
}

TEST(Rng, NormalMoments) {
    Rng r(3);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(Rng, BernoulliEdges) {
    Rng r(4);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_FALSE(r.bernoulli(0.0));
        EXPECT_TRUE(r.bernoulli(1.0));
    }
}
