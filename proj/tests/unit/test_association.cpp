#include <gtest/gtest.h>

#include <random>

#include "socnet/association.hpp"
#include "support/oracles.hpp"

using namespace socnet;
using namespace socnet::oracles;

namespace {

OccurrenceLedger ledger_of(std::vector<std::pair<std::string, std::set<std::string>>> videos) {
    OccurrenceLedger l;
    for (auto& [id, present] : videos) {
        l.entries.push_back({id, present, {}});
    }
    return l;
}

}  // namespace

TEST(Counts, SmallLedger) {
    const auto c = count_occurrences(ledger_of({{"v1", {"A", "B"}}, {"v2", {"A"}}}));
    EXPECT_EQ(c.individual("A"), 2);
    EXPECT_EQ(c.individual("B"), 1);
    EXPECT_EQ(c.pair("A", "B"), 1);
    EXPECT_EQ(c.pair("B", "A"), 1);
    EXPECT_EQ(c.total_dyadic, 1);
    EXPECT_EQ(c.individual("Z"), 0);
}

TEST(Counts, EmptyLedger) {
    const auto c = count_occurrences({});
    EXPECT_TRUE(c.per_individual.empty());
    EXPECT_TRUE(c.per_pair.empty());
    EXPECT_EQ(c.total_dyadic, 0);
}

TEST(Counts, PairwiseLedgerCountsOnlyRecordedPairs) {
    OccurrenceLedger l;
    l.pairwise = true;
    l.entries.push_back({"v1", {"A", "B", "C"}, {make_pair_key("C", "A")}});
    const auto c = count_occurrences(l);
    EXPECT_EQ(c.pair("A", "C"), 1);
    EXPECT_EQ(c.pair("A", "B"), 0);
    EXPECT_EQ(c.individual("B"), 1);
}

TEST(SimpleRatio, Examples) {
    // A in 5 videos, B in 4, together in 2: a constructed 7-video ledger
    const auto l = ledger_of({{"1", {"A", "B"}}, {"2", {"A", "B"}}, {"3", {"A"}}, {"4", {"A"}}, {"5", {"A"}},
                              {"6", {"B"}}, {"7", {"B"}}});
    const auto c = count_occurrences(l);
    EXPECT_EQ(c.individual("A"), 5);
    EXPECT_EQ(c.individual("B"), 4);
    const auto m = simple_ratio_matrix(c, {"A", "B"});
    EXPECT_NEAR(m(0, 1), 2.0 / 7.0, 1e-15);
    EXPECT_NEAR(m(0, 1), 0.285714, 1e-6);
    EXPECT_EQ(m(0, 1), recount(l, {"A", "B"})(0, 1));

    const auto always = simple_ratio_matrix(
        count_occurrences(ledger_of({{"1", {"A", "B"}}, {"2", {"A", "B"}}, {"3", {"A", "B"}}, {"4", {"A", "B"}},
                                     {"5", {"A", "B"}}})),
        {"A", "B"});
    EXPECT_EQ(always(0, 1), 1.0);
    const auto never = simple_ratio_matrix(count_occurrences(ledger_of({{"1", {"A"}}, {"2", {"B"}}})), {"A", "B"});
    EXPECT_EQ(never(0, 1), 0.0);
}

TEST(SimpleRatio, UnseenNamesAndUnobservedDyads) {
    const auto c = count_occurrences(ledger_of({{"1", {"A"}}}));
    const auto m = simple_ratio_matrix(c, {"A", "X", "Y"});
    EXPECT_EQ(m.size(), 3u);
    EXPECT_EQ(m(1, 2), 0.0);
    EXPECT_NO_THROW(m.validate());
    const auto un = unobserved_dyads(c, {"A", "X", "Y"});
    ASSERT_EQ(un.size(), 1u);
    EXPECT_EQ(un[0], make_pair_key("X", "Y"));
}

TEST(SimpleRatio, LedgerNamesAreLexicographic) {
    EXPECT_EQ(ledger_names(ledger_of({{"1", {"b", "C"}}, {"2", {"a"}}})), (std::vector<std::string>{"C", "a", "b"}));
}

TEST(SimpleRatio, AgreesWithDoubleLoopRecount) {
    std::mt19937 gen(4242);
    std::vector<std::string> names;
    for (int t = 0; t < 200; ++t) {
        const auto l = random_ledger(gen, names);
        const auto m = simple_ratio_matrix(count_occurrences(l), names);
        EXPECT_EQ(m.values(), recount(l, names).values()) << t;
        EXPECT_NO_THROW(m.validate());
    }
}

TEST(SimpleRatio, Properties) {
    std::mt19937 gen(77);
    std::vector<std::string> names;
    for (int t = 0; t < 200; ++t) {
        const auto l = random_ledger(gen, names);
        const auto m = simple_ratio_matrix(count_occurrences(l), names);
        // duplicating every video leaves the ratios unchanged
        auto doubled = l;
        for (const auto& e : l.entries) {
            doubled.entries.push_back({e.video_id + "_dup", e.present, {}});
        }
        const auto m2 = simple_ratio_matrix(count_occurrences(doubled), names);
        for (std::size_t k = 0; k < m.values().size(); ++k) {
            EXPECT_NEAR(m.values()[k], m2.values()[k], 1e-15);
        }
        // value 1 exactly when the two individuals share every video
        for (std::size_t i = 0; i < names.size(); ++i) {
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                bool same = true, seen = false;
                for (const auto& e : l.entries) {
                    const bool a = e.present.contains(names[i]), b = e.present.contains(names[j]);
                    same &= a == b;
                    seen |= a;
                }
                EXPECT_EQ(m(i, j) == 1.0, same && seen);
                const auto c = count_occurrences(l);
                EXPECT_LE(c.pair(names[i], names[j]), std::min(c.individual(names[i]), c.individual(names[j])));
            }
        }
    }
}
