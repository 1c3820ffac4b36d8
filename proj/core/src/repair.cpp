#include "spc/repair.hpp"

#include <algorithm>
#include <map>

namespace spc {

Row replicated_fresh_row(const IncompleteTable& t) { return Row(t.arity(), t.dictionary()->fresh()); }

Row x_fresh_row(const IncompleteTable& t, const AttributeSet& x) {
    Row r(t.arity(), kNull);
    ValueId z = t.dictionary()->fresh();
    for (std::size_t a : x) r[a] = z;
    return r;
}

Row null_row(const IncompleteTable& t) { return Row(t.arity(), kNull); }

std::vector<Row> replicated_fresh_rows(const IncompleteTable& t, std::size_t k) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(replicated_fresh_row(t));
    return rows;
}

std::vector<Row> x_fresh_rows(const IncompleteTable& t, const AttributeSet& x, std::size_t k) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(x_fresh_row(t, x));
    return rows;
}

bool total_part_holds(const IncompleteTable& t, const Constraint& c) {
    if (c.kind == ConstraintKind::SpKey) {
        std::vector<Row> keys;
        for (std::size_t i = 0; i < t.rows(); ++i) {
            auto r = t.row(i);
            if (!is_total(r, c.lhs)) continue;
            Row k;
            for (std::size_t a : c.lhs) k.push_back(r[a]);
            keys.push_back(std::move(k));
        }
        std::sort(keys.begin(), keys.end());
        return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
    }
    if (c.kind == ConstraintKind::SpFd) {
        AttributeSet y = c.rhs - c.lhs;
        std::map<Row, Row> seen;  // X value -> merged Y cells
        for (std::size_t i = 0; i < t.rows(); ++i) {
            auto r = t.row(i);
            if (!is_total(r, c.lhs)) continue;
            Row k;
            for (std::size_t a : c.lhs) k.push_back(r[a]);
            auto [it, inserted] = seen.try_emplace(k, Row(y.size(), kNull));
            Row& merged = it->second;
            for (std::size_t j = 0; j < y.size(); ++j) {
                ValueId v = r[y[j]];
                if (v == kNull) continue;
                if (merged[j] == kNull)
                    merged[j] = v;
                else if (merged[j] != v)
                    return false;
            }
        }
        return true;
    }
    return true;
}

std::size_t count_nontotal(const IncompleteTable& t, const AttributeSet& x) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.rows(); ++i)
        if (!is_total(t.row(i), x)) ++n;
    return n;
}

IncompleteTable fill_nulls(const IncompleteTable& t) {
    auto domains = active_domains(t);
    IncompleteTable w = t;
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t a = 0; a < w.arity(); ++a)
            if (w.at(i, a) == kNull) w.set(i, a, domains[a].values.front());
    return w;
}

SpWorld make_world(IncompleteTable complete, const std::vector<std::size_t>& source, std::size_t synthetic) {
    SpWorld w;
    w.origin = source;
    w.origin.resize(source.size() + synthetic, SpWorld::kSynthetic);
    w.table = std::move(complete);
    return w;
}

AttributeSet remap(const AttributeSet& s, const AttributeSet& onto) {
    std::vector<std::size_t> out;
    for (std::size_t a : s) {
        auto it = std::lower_bound(onto.begin(), onto.end(), a);
        out.push_back(static_cast<std::size_t>(it - onto.begin()));
    }
    return AttributeSet(std::move(out));
}

}  // namespace spc
