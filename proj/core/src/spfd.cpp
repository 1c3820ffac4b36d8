#include "spc/spfd.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "spc/errors.hpp"
#include "spc/matching.hpp"
#include "spc/repair.hpp"

namespace spc {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool all_null(std::span<const ValueId> r, const AttributeSet& y) {
    for (std::size_t a : y)
        if (r[a] != kNull) return false;
    return true;
}

Row project_row(std::span<const ValueId> r, const AttributeSet& x) {
    Row p;
    p.reserve(x.size());
    for (std::size_t a : x) p.push_back(r[a]);
    return p;
}

// Greedy set of rows that pairwise disagree on a non-NULL cell of y; each
// needs its own X-value. Rows with fewer extensions are tried first.
std::vector<std::size_t> incompatible_clique(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                                             const std::vector<ActiveDomain>& domains) {
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    for (std::size_t i = 0; i < t.rows(); ++i)
        if (!all_null(t.row(i), y)) order.emplace_back(extension_count(t, i, x, domains, t.rows() + 1), i);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::size_t> clique;
    for (const auto& [cnt, i] : order) {
        bool ok = true;
        for (std::size_t j : clique)
            if (weakly_similar(t.row(i), t.row(j), y)) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(i);
    }
    return clique;
}

// Largest number of rows in `rows` that can take pairwise distinct
// X-extensions over `domains`.
std::size_t distinct_extension_capacity(const IncompleteTable& t, const std::vector<std::size_t>& rows,
                                        const AttributeSet& x, const std::vector<ActiveDomain>& domains) {
    const std::size_t m = rows.size();
    std::size_t high = 0;
    std::map<Row, std::uint32_t> ids;
    BipartiteGraph g;
    for (std::size_t i : rows) {
        if (extension_count(t, i, x, domains, m) >= m) {
            ++high;
            continue;
        }
        auto& adj = g.adj.emplace_back();
        for_each_extension(t, i, x, domains, [&](const Row& e) {
            auto [it, inserted] = ids.try_emplace(e, static_cast<std::uint32_t>(ids.size()));
            adj.push_back(it->second);
            return true;
        });
    }
    g.right_count = ids.size();
    return hopcroft_karp(g).size + high;
}

// Backtracking assignment of X-extensions so that rows sharing an
// extension are compatible on y.
class FdSearch {
public:
    FdSearch(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y, std::uint64_t budget)
        : t_(t), x_(x), y_(y), budget_(budget), domains_(active_domains(t)) {}

    std::optional<std::vector<Row>> run();
    const std::vector<std::size_t>& conflict() const { return conflict_; }

private:
    bool compatible(std::size_t p, std::uint32_t e) const;
    bool dfs(std::size_t depth);

    const IncompleteTable& t_;
    AttributeSet x_, y_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<ActiveDomain> domains_;

    std::vector<std::size_t> search_;               // table row per search position
    std::vector<std::vector<std::uint32_t>> exts_;  // extension ids per search position
    std::vector<Row> ext_rows_;
    std::vector<std::int64_t> assigned_;
    std::vector<std::size_t> bin_count_;
    std::vector<Row> bin_merged_;  // merged y cells per extension id
    std::vector<std::size_t> conflict_;
};

bool FdSearch::compatible(std::size_t p, std::uint32_t e) const {
    if (bin_count_[e] == 0) return true;
    auto r = t_.row(search_[p]);
    const Row& merged = bin_merged_[e];
    for (std::size_t j = 0; j < y_.size(); ++j) {
        ValueId v = r[y_[j]];
        if (v != kNull && merged[j] != kNull && v != merged[j]) return false;
    }
    return true;
}

bool FdSearch::dfs(std::size_t depth) {
    if (depth == search_.size()) return true;
    if (++nodes_ > budget_) throw BudgetExceeded("spFD search", nodes_ - 1);

    // Forward check every open row and pick the one with the fewest options.
    std::size_t best = kNone, best_count = kNone;
    for (std::size_t p = 0; p < search_.size(); ++p) {
        if (assigned_[p] >= 0) continue;
        std::size_t cnt = 0;
        for (std::uint32_t e : exts_[p])
            if (compatible(p, e)) ++cnt;
        if (cnt == 0) return false;
        if (cnt < best_count) {
            best_count = cnt;
            best = p;
        }
    }
    std::vector<std::uint32_t> joins, opens;
    for (std::uint32_t e : exts_[best]) {
        if (!compatible(best, e)) continue;
        (bin_count_[e] > 0 ? joins : opens).push_back(e);
    }
    joins.insert(joins.end(), opens.begin(), opens.end());
    auto r = t_.row(search_[best]);
    for (std::uint32_t e : joins) {
        Row saved = bin_merged_[e];
        for (std::size_t j = 0; j < y_.size(); ++j)
            if (r[y_[j]] != kNull) bin_merged_[e][j] = r[y_[j]];
        ++bin_count_[e];
        assigned_[best] = e;
        if (dfs(depth + 1)) return true;
        assigned_[best] = -1;
        --bin_count_[e];
        bin_merged_[e] = std::move(saved);
    }
    return false;
}

std::optional<std::vector<Row>> FdSearch::run() {
    const std::size_t n = t_.rows();
    // Rows NULL on all of y fit anywhere; identical rows share an extension.
    std::vector<std::size_t> rep(n, kNone);
    std::vector<std::size_t> reps;
    std::map<Row, std::size_t> seen;
    AttributeSet xy = x_ | y_;
    for (std::size_t i = 0; i < n; ++i) {
        if (all_null(t_.row(i), y_)) continue;
        auto [it, inserted] = seen.try_emplace(project_row(t_.row(i), xy), i);
        rep[i] = it->second;
        if (inserted) reps.push_back(i);
    }
    // A row with at least as many extensions as there are rows can always
    // take an extension nobody else uses.
    const std::size_t m = reps.size();
    std::vector<std::size_t> free_rows;
    std::map<Row, std::uint32_t> ids;
    for (std::size_t i : reps) {
        if (extension_count(t_, i, x_, domains_, m) >= m) {
            free_rows.push_back(i);
            continue;
        }
        search_.push_back(i);
        auto& ex = exts_.emplace_back();
        for_each_extension(t_, i, x_, domains_, [&](const Row& e) {
            auto [it, inserted] = ids.try_emplace(e, static_cast<std::uint32_t>(ext_rows_.size()));
            if (inserted) ext_rows_.push_back(e);
            ex.push_back(it->second);
            return true;
        });
    }

    std::vector<std::size_t> clique = incompatible_clique(t_.select(search_), x_, y_, domains_);
    {
        BipartiteGraph g;
        g.right_count = ext_rows_.size();
        for (std::size_t p : clique) g.adj.push_back(exts_[p]);
        if (hopcroft_karp(g).size < clique.size()) {
            for (std::size_t p : clique) conflict_.push_back(search_[p]);
            std::sort(conflict_.begin(), conflict_.end());
            return std::nullopt;
        }
    }

    assigned_.assign(search_.size(), -1);
    bin_count_.assign(ext_rows_.size(), 0);
    bin_merged_.assign(ext_rows_.size(), Row(y_.size(), kNull));
    if (!dfs(0)) return std::nullopt;

    std::vector<Row> ext(n);
    std::set<Row> used;
    for (std::size_t p = 0; p < search_.size(); ++p) {
        ext[search_[p]] = ext_rows_[assigned_[p]];
        used.insert(ext[search_[p]]);
    }
    for (std::size_t i : free_rows) {
        for_each_extension(t_, i, x_, domains_, [&](const Row& e) {
            if (used.count(e)) return true;
            ext[i] = e;
            used.insert(e);
            return false;
        });
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rep[i] == kNone) {
            for_each_extension(t_, i, x_, domains_, [&](const Row& e) {
                ext[i] = e;
                return false;
            });
        } else if (rep[i] != i) {
            ext[i] = ext[rep[i]];
        }
    }
    return ext;
}

// Completes t from an X-extension per row: each X-class takes the merged
// non-NULL y cells, and remaining NULLs the smallest domain value.
IncompleteTable complete_from(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                              const std::vector<Row>& ext) {
    IncompleteTable w = t;
    std::map<Row, Row> merged;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) w.set(i, x[j], ext[i][j]);
        auto [it, inserted] = merged.try_emplace(ext[i], Row(y.size(), kNull));
        for (std::size_t j = 0; j < y.size(); ++j)
            if (t.at(i, y[j]) != kNull) it->second[j] = t.at(i, y[j]);
    }
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const Row& m = merged[ext[i]];
        for (std::size_t j = 0; j < y.size(); ++j)
            if (m[j] != kNull) w.set(i, y[j], m[j]);
    }
    return fill_nulls(w);
}

std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

Verdict check_normalized(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                         std::uint64_t budget) {
    Verdict v;
    if (t.empty()) {
        v.holds = true;
        v.world = make_world(t, {});
        return v;
    }
    FdSearch search(t, x, y, budget);
    auto ext = search.run();
    v.holds = ext.has_value();
    if (v.holds)
        v.world = make_world(complete_from(t, x, y, *ext), identity(t.rows()));
    else
        v.violation = search.conflict();
    return v;
}

}  // namespace

Verdict check_spfd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y, const FdOptions& opt) {
    validate(Constraint::fd(x, y), t.schema());
    FdInstance fd = FdInstance::normalize(x, y);
    return check_normalized(t, fd.lhs, fd.rhs, opt.node_budget);
}

RemovalResult g3_spfd(const IncompleteTable& t, const AttributeSet& x0, const AttributeSet& y0, const FdOptions& opt) {
    validate(Constraint::fd(x0, y0), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    FdInstance fd = FdInstance::normalize(x0, y0);
    const AttributeSet& x = fd.lhs;
    const AttributeSet& y = fd.rhs;
    const std::size_t n = t.rows();

    RemovalResult res;
    res.precondition = total_part_holds(t, Constraint::fd(x0, y0));
    const std::vector<std::size_t> clique = incompatible_clique(t, x, y, active_domains(t));

    std::uint64_t nodes = 0;
    std::map<std::vector<bool>, bool> memo;
    std::vector<bool> removed(n, false);
    std::size_t k = 0;

    // Rows of the clique that stay need distinct X-values over the domains
    // of the rows still available.
    auto lower_bound = [&](std::size_t decided, std::size_t removed_count) {
        std::vector<std::size_t> avail;
        for (std::size_t i = 0; i < n; ++i)
            if (i >= decided || !removed[i]) avail.push_back(i);
        IncompleteTable a = t.select(avail);
        auto domains = active_domains(a);
        std::vector<std::size_t> in_a;
        for (std::size_t i : clique)
            if (i >= decided || !removed[i]) in_a.push_back(i);
        return removed_count + in_a.size() - distinct_extension_capacity(t, in_a, x, domains);
    };

    auto leaf = [&]() {
        auto [it, inserted] = memo.try_emplace(removed, false);
        if (inserted) {
            std::vector<std::size_t> kept;
            for (std::size_t i = 0; i < n; ++i)
                if (!removed[i]) kept.push_back(i);
            it->second = check_normalized(t.select(kept), x, y, opt.node_budget).holds;
        }
        return it->second;
    };

    // Remove-first depth-first search visits removal sets of size k in
    // lexicographic order.
    auto dfs = [&](auto&& self, std::size_t i, std::size_t count) -> bool {
        if (count == k) {
            for (std::size_t j = i; j < n; ++j) removed[j] = false;
            return leaf();
        }
        if (count + (n - i) < k) return false;
        if (count + (n - i) == k) {
            for (std::size_t j = i; j < n; ++j) removed[j] = true;
            if (leaf()) return true;
            for (std::size_t j = i; j < n; ++j) removed[j] = false;
            return false;
        }
        if (++nodes > opt.node_budget) throw BudgetExceeded("spFD removal search", nodes - 1);
        if (lower_bound(i, count) > k) return false;
        removed[i] = true;
        if (self(self, i + 1, count + 1)) return true;
        removed[i] = false;
        return self(self, i + 1, count);
    };

    for (k = lower_bound(0, 0); k <= n; ++k) {
        std::fill(removed.begin(), removed.end(), false);
        if (!dfs(dfs, 0, 0)) continue;
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < n; ++i) (removed[i] ? res.removed : kept).push_back(i);
        res.value = Ratio(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
        Verdict v = check_normalized(t.select(kept), x, y, opt.node_budget);
        v.world->origin = kept;
        res.world = std::move(v.world);
        return res;
    }
    throw InvalidInput("unreachable: removing every row always satisfies the constraint");
}

AdditionResult g5_spfd(const IncompleteTable& t, const AttributeSet& x0, const AttributeSet& y0, const FdOptions& opt) {
    validate(Constraint::fd(x0, y0), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    FdInstance fd = FdInstance::normalize(x0, y0);
    AdditionResult res;
    res.precondition = total_part_holds(t, Constraint::fd(x0, y0));
    const auto n = static_cast<std::int64_t>(t.rows());
    Verdict v0 = check_normalized(t, fd.lhs, fd.rhs, opt.node_budget);
    if (v0.holds) {
        res.value = Ratio(0, n);
        res.world = std::move(v0.world);
        return res;
    }
    if (!res.precondition) return res;

    // Feasibility is monotone in the number of X-fresh rows.
    auto attempt = [&](std::size_t count) {
        auto rows = x_fresh_rows(t, fd.lhs, count);
        Verdict v = check_normalized(t.with_rows(rows), fd.lhs, fd.rhs, opt.node_budget);
        return std::make_pair(std::move(rows), std::move(v));
    };
    std::size_t lo = 1, hi = count_nontotal(t, fd.lhs);
    if (hi == 0) return res;
    auto best = attempt(hi);
    if (!best.second.holds) return res;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto cand = attempt(mid);
        if (cand.second.holds) {
            hi = mid;
            best = std::move(cand);
        } else {
            lo = mid + 1;
        }
    }
    res.value = Ratio(static_cast<std::int64_t>(best.first.size()), n);
    res.added = std::move(best.first);
    res.world = std::move(best.second.world);
    for (std::size_t i = t.rows(); i < res.world->origin.size(); ++i) res.world->origin[i] = SpWorld::kSynthetic;
    return res;
}

FdMeasureReport measure_spfd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                             const FdOptions& opt) {
    FdMeasureReport r;
    Verdict v = check_spfd(t, x, y, opt);
    r.holds = v.holds;
    r.spworld_witness = std::move(v.world);
    RemovalResult g3 = g3_spfd(t, x, y, opt);
    r.g3 = g3.value;
    r.precondition = g3.precondition;
    r.removal_witness = std::move(g3.removed);
    AdditionResult g5 = g5_spfd(t, x, y, opt);
    r.g5 = g5.value;
    r.addition_witness = std::move(g5.added);
    return r;
}

}  // namespace spc
