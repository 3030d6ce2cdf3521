#include <gtest/gtest.h>

#include <set>

#include "socnet/random.hpp"

using socnet::Xorshift64Star;

TEST(Random, SplitmixReferenceValues) {
    // first outputs of the reference splitmix64 generator seeded with 0
    EXPECT_EQ(Xorshift64Star::splitmix64(0), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(Xorshift64Star::splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(Random, SameSeedSameSequence) {
    Xorshift64Star a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        differs |= x != c.next();
    }
    EXPECT_TRUE(differs);
}

TEST(Random, StepMatchesWrittenAlgorithm) {
    std::uint64_t s = Xorshift64Star::splitmix64(12345);
    Xorshift64Star g(12345);
    for (int i = 0; i < 100; ++i) {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        EXPECT_EQ(g.next(), s * 0x2545F4914F6CDD1DULL);
    }
}

TEST(Random, MulhiMatchesWideMultiply) {
    Xorshift64Star g(9);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t a = g.next(), b = i % 3 ? g.next() : g.next() >> (i % 64);
        __extension__ using u128 = unsigned __int128;
        EXPECT_EQ(Xorshift64Star::mulhi(a, b), static_cast<std::uint64_t>((u128(a) * b) >> 64));
    }
    EXPECT_EQ(Xorshift64Star::mulhi(~0ULL, ~0ULL), ~0ULL - 1);
}

TEST(Random, UniformAndBelowStayInRange) {
    Xorshift64Star g(1);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 20000; ++i) {
        const double u = g.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const auto k = g.below(7);
        EXPECT_LT(k, 7u);
        seen.insert(k);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(Random, DerivedStreamsDiffer) {
    EXPECT_NE(Xorshift64Star::derive(42, 1), Xorshift64Star::derive(42, 2));
    EXPECT_NE(Xorshift64Star::derive(42, 1), Xorshift64Star::derive(43, 1));
    EXPECT_EQ(Xorshift64Star::derive(42, 1), Xorshift64Star::derive(42, 1));
}
