#include <gtest/gtest.h>

#include <numeric>

#include "spc/errors.hpp"
#include "spc/generators.hpp"
#include "spc/oracle.hpp"
#include "spc/repair.hpp"
#include "spc/spkey.hpp"
#include "support.hpp"

using namespace spc;
using namespace spc::testing;

TEST(CheckKey, CourseTableHolds) {
    auto t = course();
    Verdict v = check_spkey(t, AttributeSet{0, 1});
    ASSERT_TRUE(v.holds);
    EXPECT_TRUE(is_world_of(t, v.world->table));
    EXPECT_TRUE(holds_key(v.world->table, AttributeSet{0, 1}));
}

TEST(CheckKey, TableFourFails) { EXPECT_FALSE(check_spkey(table4(), AttributeSet{0, 1}).holds); }

TEST(CheckKey, SingleRowHolds) { EXPECT_TRUE(check_spkey(tbl({"A", "B"}, {{"_", "_"}}), AttributeSet{0, 1}).holds); }

TEST(MeasureKey, TableFour) {
    auto t = table4();
    AttributeSet k{0, 1};
    auto r = g3_spkey(t, k);
    EXPECT_EQ(r.value.str(), "2/4");
    EXPECT_TRUE(removal_witness_valid(t, Constraint::key(k), r));
    EXPECT_EQ(g4_spkey(t, k).reduced_str(), "1/2");
    auto a = g5_spkey(t, k);
    ASSERT_TRUE(a.value);
    EXPECT_EQ(a.value->str(), "1/4");
    ASSERT_EQ(a.added.size(), 1u);
    EXPECT_EQ(a.added[0][0], a.added[0][1]);
    EXPECT_FALSE(active_domain(t, 0).contains(a.added[0][0]));
    EXPECT_TRUE(addition_witness_valid(t, Constraint::key(k), a));
}

TEST(MeasureKey, ComponentMeasureOnMixedInstance) {
    auto t = tbl({"A", "B", "C"},
                 {{"_", "1", "1"}, {"2", "_", "1"}, {"2", "_", "1"}, {"2", "2", "1"}, {"2", "2", "3"}, {"2", "1", "3"}});
    AttributeSet k{0, 1, 2};
    EXPECT_EQ(g4_spkey(t, k).str(), "2/8");
    EXPECT_EQ(g3_spkey(t, k).value.str(), "2/6");
}

TEST(MeasureKey, CarsTable) {
    auto t = cars();
    AttributeSet k{0, 1};
    EXPECT_FALSE(check_spkey(t, k).holds);
    auto r = g3_spkey(t, k);
    EXPECT_EQ(r.value.str(), "2/4");
    EXPECT_TRUE(removal_witness_valid(t, Constraint::key(k), r));
    auto a = g5_spkey(t, k);
    ASSERT_TRUE(a.value);
    EXPECT_EQ(a.value->str(), "1/4");
}

TEST(MeasureKey, FamilyValues) {
    for (int q = 2; q <= 8; ++q)
        for (int p = 0; p < q; ++p) {
            auto inst = gen_prop3(p, q);
            const auto& k = inst.constraint.lhs;
            const std::int64_t c = inst.provenance.parameters.at("c");
            Ratio g3 = g3_spkey(inst.table, k).value;
            auto g5 = g5_spkey(inst.table, k).value;
            ASSERT_TRUE(g5);
            EXPECT_TRUE(g3.identical(Ratio(c * p + 1, c * q))) << p << "/" << q;
            EXPECT_TRUE(g5->identical(Ratio(1, c * q))) << p << "/" << q;
        }
}

TEST(MeasureKey, DifferenceFamilyAchievesEveryRatio) {
    for (int q = 2; q <= 10; ++q)
        for (int p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            auto inst = gen_thm1(p, q);
            const auto& k = inst.constraint.lhs;
            auto g5 = g5_spkey(inst.table, k).value;
            ASSERT_TRUE(g5);
            EXPECT_EQ(g3_spkey(inst.table, k).value - *g5, Ratio(p, q)) << p << "/" << q;
        }
}

TEST(MeasureKey, RepeatedTotalKeyViolatesPrecondition) {
    auto t = tbl({"A", "B"}, {{"1", "1"}, {"1", "1"}, {"_", "2"}});
    EXPECT_THROW(g5_spkey(t, AttributeSet{0, 1}), PreconditionViolated);
    auto r = g3_spkey(t, AttributeSet{0, 1});
    EXPECT_FALSE(r.precondition);
    EXPECT_EQ(r.value.str(), "1/3");
}

TEST(MeasureKey, SingleAttributeKeyIsUnreachable) {
    auto t = tbl({"A", "B"}, {{"1", "1"}, {"_", "2"}});
    EXPECT_FALSE(g5_spkey(t, AttributeSet{0}).value.has_value());
    EXPECT_FALSE(oracle_g5(t, Constraint::key({0})).value.has_value());
}

TEST(MeasureKey, ReportBundlesEverything) {
    auto r = measure_spkey(table4(), AttributeSet{0, 1});
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.g3.str(), "2/4");
    ASSERT_TRUE(r.g4);
    ASSERT_TRUE(r.g5);
    EXPECT_EQ(r.g5->str(), "1/4");
    EXPECT_EQ(r.removal_witness.size(), 2u);
}

TEST(KeyProperties, AgreeWithOracle) {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 400; ++it) {
        auto t = random_small(rng, 1 + it % 6, 3, 3, 0.35);
        for (const auto& k : nonempty_subsets(3)) {
            Constraint c = Constraint::key(k);
            Verdict v = check_spkey(t, k);
            EXPECT_EQ(v.holds, oracle_check(t, c).holds);
            if (v.holds) {
                EXPECT_TRUE(is_world_of(t, v.world->table) && holds(v.world->table, c));
            }
            auto r = g3_spkey(t, k);
            EXPECT_TRUE(r.value.identical(oracle_g3(t, c).value));
            EXPECT_TRUE(removal_witness_valid(t, c, r));
            if (!total_part_holds(t, c)) {
                EXPECT_THROW(g5_spkey(t, k), PreconditionViolated);
                continue;
            }
            auto a = g5_spkey(t, k);
            auto o = oracle_g5(t, c);
            ASSERT_EQ(a.value.has_value(), o.value.has_value());
            if (a.value) {
                EXPECT_TRUE(a.value->identical(*o.value));
                EXPECT_TRUE(addition_witness_valid(t, c, a));
            }
        }
    }
}

TEST(KeyProperties, RemovalAboveAdditionOnNondegenerateTables) {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 400; ++it) {
        auto t = random_small(rng, 2 + it % 7, 3, 3, 0.3);
        if (!nondegenerate(t)) continue;
        for (const auto& k : nonempty_subsets(3)) {
            if (k.size() < 2 || !total_part_holds(t, Constraint::key(k))) continue;
            auto a = g5_spkey(t, k);
            ASSERT_TRUE(a.value);
            EXPECT_GE(g3_spkey(t, k).value, *a.value);
        }
    }
}

TEST(KeyProperties, RemovalWitnessAvoidsTotalRowsWhenPreconditionHolds) {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 300; ++it) {
        auto t = random_small(rng, 2 + it % 6, 3, 3, 0.35);
        AttributeSet k{0, 1, 2};
        auto r = g3_spkey(t, k);
        if (!r.precondition) continue;
        for (std::size_t i : r.removed) EXPECT_FALSE(is_total(t.row(i), k));
    }
}

TEST(KeyProperties, LargerTablesBeyondTheOracle) {
    std::mt19937_64 rng(44);
    for (int it = 0; it < 20; ++it) {
        auto t = random_small(rng, 40, 4, 6, 0.25);
        AttributeSet k{0, 1, 2};
        auto r = g3_spkey(t, k);
        EXPECT_TRUE(removal_witness_valid(t, Constraint::key(k), r));
        EXPECT_EQ(r.value.num == 0, check_spkey(t, k).holds);
    }
}
