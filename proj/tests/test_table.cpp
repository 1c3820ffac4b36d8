#include <gtest/gtest.h>

#include "spc/errors.hpp"
#include "spc/repair.hpp"
#include "spc/table.hpp"
#include "support.hpp"

using namespace spc;
using namespace spc::testing;

namespace {

std::vector<std::string> domain_names(const IncompleteTable& t, std::size_t a) {
    std::vector<std::string> out;
    for (ValueId v : active_domain(t, a).values) out.push_back(t.dictionary()->name(v));
    return out;
}

}  // namespace

TEST(ActiveDomain, CourseNameColumn) {
    EXPECT_EQ(domain_names(course(), 0), (std::vector<std::string>{"Datamining", "Mathematics"}));
    EXPECT_FALSE(active_domain(course(), 0).degenerate);
}

TEST(ActiveDomain, TotalColumnIsItsValueSet) {
    auto t = tbl({"A"}, {{"3"}, {"1"}, {"2"}, {"1"}});
    EXPECT_EQ(domain_names(t, 0), (std::vector<std::string>{"1", "2", "3"}));
}

TEST(ActiveDomain, AllNullColumnGetsReservedSymbol) {
    auto t = tbl({"A", "B"}, {{"1", "_"}, {"2", "_"}});
    ActiveDomain d = active_domain(t, 1);
    EXPECT_TRUE(d.degenerate);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.values[0], kSsymb);
    EXPECT_EQ(t.dictionary()->name(kSsymb), "ssymb");
}

TEST(ActiveDomain, ReservedSymbolDiffersFromIngestedToken) {
    auto t = tbl({"A", "B"}, {{"ssymb", "_"}});
    EXPECT_NE(t.at(0, 0), kSsymb);
    EXPECT_FALSE(active_domain(t, 0).contains(kSsymb));
}

TEST(Similarity, WeakExamples) {
    auto t = tbl({"X1", "X2"}, {{"_", "1"}, {"2", "1"}, {"1", "1"}});
    AttributeSet x{0, 1};
    EXPECT_TRUE(weakly_similar(t.row(0), t.row(1), x));
    EXPECT_FALSE(weakly_similar(t.row(2), t.row(1), x));
    for (std::size_t i = 0; i < t.rows(); ++i) EXPECT_TRUE(weakly_similar(t.row(i), t.row(i), x));
}

TEST(Similarity, StrongExamples) {
    auto t = tbl({"X1", "X2"}, {{"2", "2"}, {"2", "2"}, {"_", "1"}, {"_", "1"}});
    AttributeSet x{0, 1};
    EXPECT_TRUE(strongly_similar(t.row(0), t.row(1), x));
    EXPECT_FALSE(strongly_similar(t.row(2), t.row(3), x));
    EXPECT_TRUE(strongly_similar(t.row(0), t.row(2), AttributeSet{}));
}

TEST(Project, KeepsRowsAndSelectedColumns) {
    auto t = table4();
    auto p = project(t, AttributeSet{1});
    EXPECT_EQ(p.rows(), 4u);
    EXPECT_EQ(p.arity(), 1u);
    EXPECT_EQ(project(t, AttributeSet::all(2)), t);
}

TEST(Project, SingleColumnOfFourColumnTable) {
    auto t = tbl({"X", "Y", "Z", "V"}, {{"1", "1", "1", "1"}, {"_", "2", "1", "2"}});
    auto p = project(t, AttributeSet{0});
    EXPECT_EQ(p, tbl({"X"}, {{"1"}, {"_"}}));
}

TEST(IsTotal, Examples) {
    auto t = tbl({"X1", "X2"}, {{"2", "2"}, {"2", "_"}});
    EXPECT_TRUE(is_total(t.row(0), AttributeSet{0, 1}));
    EXPECT_FALSE(is_total(t.row(1), AttributeSet{0, 1}));
    EXPECT_TRUE(is_total(t.row(1), AttributeSet{0}));
}

TEST(Table, BagSemanticsKeepsDuplicates) {
    auto t = tbl({"A"}, {{"1"}, {"1"}, {"1"}});
    EXPECT_EQ(t.rows(), 3u);
    EXPECT_EQ(t.without(std::vector<std::size_t>{1}).rows(), 2u);
}

TEST(Table, RaggedRowsRejected) { EXPECT_THROW(tbl({"A", "B"}, {{"1"}}), InvalidInput); }

TEST(Table, DuplicateAttributeNamesRejected) { EXPECT_THROW(tbl({"A", "A"}, {}), InvalidInput); }

TEST(Dictionary, FreshValuesAreDistinct) {
    auto t = tbl({"A"}, {{"_new1"}, {"x"}});
    ValueId f1 = t.dictionary()->fresh(), f2 = t.dictionary()->fresh();
    EXPECT_NE(f1, f2);
    EXPECT_NE(f1, t.at(0, 0));
    EXPECT_NE(f2, t.at(0, 0));
}

TEST(Extensions, OdometerOrderLastNullFastest) {
    auto t = tbl({"A", "B"}, {{"1", "1"}, {"2", "2"}, {"_", "_"}});
    auto doms = active_domains(t);
    std::vector<std::string> seen;
    for_each_extension(t, 2, AttributeSet{0, 1}, doms, [&](const Row& r) {
        seen.push_back(t.dictionary()->name(r[0]) + t.dictionary()->name(r[1]));
        return true;
    });
    EXPECT_EQ(seen, (std::vector<std::string>{"11", "12", "21", "22"}));
    EXPECT_EQ(extension_count(t, 2, AttributeSet{0, 1}, doms, 100), 4u);
    EXPECT_EQ(extension_count(t, 2, AttributeSet{0, 1}, doms, 3), 3u);
}

TEST(TableProperties, SimilarityLaws) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        auto t = random_small(rng, 4, 3, 3, 0.3);
        for (const auto& x : nonempty_subsets(3))
            for (std::size_t i = 0; i < t.rows(); ++i)
                for (std::size_t j = 0; j < t.rows(); ++j) {
                    bool s = strongly_similar(t.row(i), t.row(j), x), w = weakly_similar(t.row(i), t.row(j), x);
                    if (s) {
                        EXPECT_TRUE(w);
                    }
                    EXPECT_EQ(w, weakly_similar(t.row(j), t.row(i), x));
                    EXPECT_EQ(s, strongly_similar(t.row(j), t.row(i), x));
                }
    }
}

TEST(TableProperties, DomainMonotoneUnderAddition) {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 200; ++it) {
        auto t = random_small(rng, 4, 3, 3, 0.3);
        auto extra = random_small(rng, 2, 3, 4, 0.3);
        std::vector<Row> rows;
        for (std::size_t i = 0; i < extra.rows(); ++i) {
            Row r;
            for (std::size_t a = 0; a < 3; ++a)
                r.push_back(extra.at(i, a) == kNull ? kNull : t.value(extra.cell_name(i, a)));
            rows.push_back(r);
        }
        auto u = t.with_rows(rows);
        for (std::size_t a = 0; a < 3; ++a) {
            ActiveDomain d = active_domain(t, a);
            if (d.degenerate) continue;
            for (ValueId v : d.values) EXPECT_TRUE(active_domain(u, a).contains(v));
        }
    }
}

TEST(TableProperties, ProjectionComposes) {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 100; ++it) {
        auto t = random_small(rng, 4, 4, 3, 0.3);
        for (const auto& x : nonempty_subsets(4))
            for (const auto& y : nonempty_subsets(4)) {
                AttributeSet xy = x | y;
                EXPECT_EQ(project(project(t, xy), remap(x, xy)), project(t, x));
            }
    }
}
