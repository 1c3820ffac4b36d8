#include <gtest/gtest.h>

#include "spc/errors.hpp"
#include "spc/oracle.hpp"
#include "spc/repair.hpp"
#include "support.hpp"

using namespace spc;
using namespace spc::testing;

TEST(Enumerate, CourseTableYieldsTheCompletedTable) {
    auto t = course();
    auto done = tbl(t.schema().names(), {{"Mathematics", "2019", "Sarah", "5", "1"},
                                          {"Datamining", "2018", "Sarah", "7", "2"},
                                          {"Datamining", "2019", "Sarah", "7", "2"}});
    bool found = false;
    SpWorldEnumerator e(t);
    while (e.next()) {
        bool same = true;
        for (std::size_t i = 0; i < 3 && same; ++i)
            for (std::size_t a = 0; a < 5 && same; ++a) same = e.world().cell_name(i, a) == done.cell_name(i, a);
        found = found || same;
    }
    EXPECT_TRUE(found);
}

TEST(Enumerate, TotalTableHasOneWorld) {
    auto t = tbl({"A", "B"}, {{"1", "2"}, {"2", "1"}});
    SpWorldEnumerator e(t);
    ASSERT_TRUE(e.next());
    EXPECT_EQ(e.world(), t);
    EXPECT_FALSE(e.next());
}

TEST(Enumerate, TableFourHasFourWorlds) {
    EXPECT_EQ(count_spworlds(table4()), 4u);
    SpWorldEnumerator e(table4());
    std::size_t n = 0;
    while (e.next()) ++n;
    EXPECT_EQ(n, 4u);
}

TEST(Enumerate, BudgetIsAHardFailure) {
    auto t = tbl({"A", "B", "C"}, {{"1", "1", "1"}, {"2", "2", "2"}, {"3", "3", "3"}, {"_", "_", "_"}, {"_", "_", "_"}});
    EXPECT_THROW(SpWorldEnumerator(t, 100), BudgetExceeded);
}

TEST(Holds, CompletedCourseTableKey) {
    auto w = tbl({"Course Name", "Year"}, {{"Mathematics", "2019"}, {"Datamining", "2018"}, {"Datamining", "2019"}});
    EXPECT_TRUE(holds_key(w, AttributeSet{0, 1}));
}

TEST(Holds, OneRowTableSatisfiesEverything) {
    auto w = tbl({"A", "B", "C"}, {{"1", "2", "3"}});
    EXPECT_TRUE(holds_key(w, AttributeSet{0}));
    EXPECT_TRUE(holds_fd(w, AttributeSet{0}, AttributeSet{1}));
    EXPECT_TRUE(holds_mvd(w, AttributeSet{0}, AttributeSet{1}));
    EXPECT_TRUE(holds_cj(w, AttributeSet{0}, AttributeSet{1}));
}

TEST(Holds, MvdWithConstantY) {
    auto w = tbl({"X", "Y", "Z"}, {{"1", "1", "1"}, {"1", "1", "2"}, {"1", "1", "1"}});
    EXPECT_TRUE(holds_mvd(w, AttributeSet{0}, AttributeSet{1}));
}

TEST(OracleCheck, TableFourKeyFails) { EXPECT_FALSE(oracle_check(table4(), Constraint::key({0, 1})).holds); }

TEST(OracleCheck, FigureOneMvdVerdicts) {
    EXPECT_TRUE(oracle_check(fig1_a(), Constraint::mvd({0}, {1})).holds);
    EXPECT_FALSE(oracle_check(fig1_c(), Constraint::mvd({0}, {1})).holds);
}

TEST(OracleG3, TableFour) {
    auto r = oracle_g3(table4(), Constraint::key({0, 1}));
    EXPECT_EQ(r.value.str(), "2/4");
    EXPECT_TRUE(removal_witness_valid(table4(), Constraint::key({0, 1}), r));
}

TEST(OracleG3, SixRowFd) { EXPECT_EQ(oracle_g3(spfd_six(), Constraint::fd({0, 1}, {2})).value.str(), "2/6"); }

TEST(OracleG3, SatisfiedIsZero) { EXPECT_EQ(oracle_g3(course(), Constraint::key({0, 1})).value.str(), "0/3"); }

TEST(OracleG3, TotalRemovalTableRemovesTheTotalRow) {
    auto r = oracle_g3(total_removal(), Constraint::fd({0, 1}, {2}));
    EXPECT_EQ(r.value.str(), "1/5");
    EXPECT_EQ(r.removed, std::vector<std::size_t>{2});
}

TEST(OracleG5, TableFour) {
    auto a = oracle_g5(table4(), Constraint::key({0, 1}));
    ASSERT_TRUE(a.value);
    EXPECT_EQ(a.value->str(), "1/4");
    EXPECT_TRUE(addition_witness_valid(table4(), Constraint::key({0, 1}), a));
}

TEST(OracleG5, SixRowFd) {
    auto a = oracle_g5(spfd_six(), Constraint::fd({0, 1}, {2}));
    ASSERT_TRUE(a.value);
    EXPECT_EQ(a.value->str(), "1/6");
}

TEST(OracleG5, TeacherCrossJoinOneNullRow) {
    auto a = oracle_g5(cj_five(), Constraint::cj({0}, {1}));
    ASSERT_TRUE(a.value);
    EXPECT_EQ(a.value->str(), "1/5");
    ASSERT_EQ(a.added.size(), 1u);
    EXPECT_EQ(a.added[0], (Row{kNull, kNull}));
}

TEST(OracleG5, ExhaustivePoolMatchesOnTableFour) {
    auto k = oracle_g5_exhaustive(table4(), Constraint::key({0, 1}), 2, 2);
    ASSERT_TRUE(k);
    EXPECT_EQ(*k, 1u);
}

TEST(Missing, CrossJoinOverlapIsUnrealizable) {
    auto w = tbl({"A", "B"}, {{"1", "1"}, {"2", "2"}});
    EXPECT_FALSE(cj_missing(w, AttributeSet{0}, AttributeSet{0, 1}).has_value());
    EXPECT_EQ(*cj_missing(w, AttributeSet{0}, AttributeSet{1}), 2u);
    EXPECT_EQ(mvd_missing(w, AttributeSet{0}, AttributeSet{1}), 0u);
}

class OracleProperties : public ::testing::Test {
protected:
    std::mt19937_64 rng{21};
};

TEST_F(OracleProperties, CheckIffZeroMeasures) {
    for (int it = 0; it < 150; ++it) {
        auto t = random_small(rng, 1 + it % 4, 3, 2, 0.3);
        for (const Constraint& c : {Constraint::key({0, 1}), Constraint::fd({0}, {1}), Constraint::mvd({0}, {1}),
                                    Constraint::cj({0}, {1, 2})}) {
            bool h = oracle_check(t, c).holds;
            EXPECT_EQ(h, oracle_g3(t, c).value.num == 0);
            auto a = oracle_g5(t, c);
            EXPECT_EQ(h, a.value && a.value->num == 0);
        }
    }
}

TEST_F(OracleProperties, OrderingOnNondegenerateKeysAndFds) {
    for (int it = 0; it < 150; ++it) {
        auto t = random_small(rng, 2 + it % 3, 3, 2, 0.3);
        if (!nondegenerate(t)) continue;
        for (const Constraint& c : {Constraint::key({0, 1}), Constraint::key({0, 1, 2}), Constraint::fd({0}, {1}),
                                    Constraint::fd({0, 1}, {2})}) {
            if (!total_part_holds(t, c)) continue;
            auto a = oracle_g5(t, c);
            ASSERT_TRUE(a.value);
            EXPECT_GE(oracle_g3(t, c).value, *a.value);
        }
    }
}

TEST_F(OracleProperties, FdImpliesMvd) {
    for (int it = 0; it < 200; ++it) {
        auto t = random_small(rng, 1 + it % 4, 3, 2, 0.3);
        if (oracle_check(t, Constraint::fd({0}, {1})).holds) {
            EXPECT_TRUE(oracle_check(t, Constraint::mvd({0}, {1})).holds);
        }
    }
}

TEST_F(OracleProperties, MvdIgnoresLeftAttributesOnTheRight) {
    for (int it = 0; it < 200; ++it) {
        auto t = random_small(rng, 1 + it % 4, 3, 2, 0.3);
        EXPECT_EQ(oracle_check(t, Constraint::mvd({0}, {0, 1})).holds, oracle_check(t, Constraint::mvd({0}, {1})).holds);
    }
}

TEST_F(OracleProperties, WitnessesReplay) {
    for (int it = 0; it < 100; ++it) {
        auto t = random_small(rng, 1 + it % 4, 3, 2, 0.3);
        for (const Constraint& c : {Constraint::key({0, 1}), Constraint::fd({0}, {1, 2}), Constraint::mvd({0}, {1}),
                                    Constraint::cj({0}, {1})}) {
            Verdict v = oracle_check(t, c);
            if (v.holds) {
                EXPECT_TRUE(is_world_of(t, v.world->table) && holds(v.world->table, c));
            }
            EXPECT_TRUE(removal_witness_valid(t, c, oracle_g3(t, c)));
            auto a = oracle_g5(t, c);
            if (a.value) {
                EXPECT_TRUE(addition_witness_valid(t, c, a));
            }
        }
    }
}
