#include "spc/tuplegen.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "spc/errors.hpp"
#include "spc/matching.hpp"
#include "spc/repair.hpp"

namespace spc {

namespace {

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

Row project_row(std::span<const ValueId> r, const AttributeSet& x) {
    Row p;
    p.reserve(x.size());
    for (std::size_t a : x) p.push_back(r[a]);
    return p;
}

bool all_null(std::span<const ValueId> r, const AttributeSet& x) {
    for (std::size_t a : x)
        if (r[a] != kNull) return false;
    return true;
}

bool fits(const Row& pattern, std::span<const ValueId> r, const AttributeSet& cols) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        ValueId v = r[cols[j]];
        if (v != kNull && pattern[j] != kNull && v != pattern[j]) return false;
    }
    return true;
}

std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

ValueId smallest(const std::vector<ActiveDomain>& domains, std::size_t a) { return domains[a].values.front(); }

// Cross join of disjoint attribute sets xs and ys over a subset of rows.
// Tuples are grouped into X-classes and Y-classes whose merged patterns stay
// consistent; classes are made concrete only at the end. Making two classes
// equal can only lower the missing count, so the minimum over groupings is
// the minimum over spWorlds. Rows NULL on xs and ys are handled in closed
// form: each one realizes a missing pair.
class CjSearch {
public:
    CjSearch(const IncompleteTable& t, const std::vector<std::size_t>& rows, AttributeSet xs, AttributeSet ys,
             const std::vector<ActiveDomain>& domains, std::uint64_t& nodes, std::uint64_t budget)
        : t_(t), rows_(rows), xs_(std::move(xs)), ys_(std::move(ys)), domains_(domains), nodes_(nodes),
          budget_(budget) {
        AttributeSet xy = xs_ | ys_;
        std::vector<std::pair<std::size_t, std::size_t>> order;  // (-nonnull, row)
        for (std::size_t i : rows_) {
            if (all_null(t_.row(i), xy)) {
                ++allnull_;
                continue;
            }
            std::size_t nonnull = 0;
            for (std::size_t a : xy)
                if (t_.at(i, a) != kNull) ++nonnull;
            order.emplace_back(xy.size() - nonnull, i);
        }
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [k, i] : order) active_.push_back(i);
        const std::size_t m = active_.size();
        pair_count_.assign(m + 1, std::vector<std::size_t>(m + 1, 0));
        ax_.assign(m, 0);
        ay_.assign(m, 0);
    }

    // Minimum below cutoff, stopping as soon as one at or below stop_at is found.
    std::optional<std::size_t> run(std::size_t stop_at, std::size_t cutoff) {
        best_ = cutoff;
        stop_at_ = stop_at;
        found_ = false;
        dfs(0);
        if (!found_) return std::nullopt;
        return best_;
    }

    // Completed rows (input order) for the best grouping, xs and ys filled.
    std::vector<Row> concrete() const;

private:
    struct Side {
        std::vector<Row> pattern;
        std::vector<std::size_t> size;
    };

    std::size_t missing_now() const { return x_.pattern.size() * y_.pattern.size() - pairs_; }
    std::size_t after_nulls(std::size_t m) const { return m > allnull_ ? m - allnull_ : 0; }

    // Remaining rows that fit no existing class and pairwise exclude each
    // other each force a new class.
    std::size_t forced_new(const Side& s, const AttributeSet& cols, std::size_t depth) const {
        std::vector<std::size_t> chosen;
        for (std::size_t d = depth; d < active_.size(); ++d) {
            auto r = t_.row(active_[d]);
            bool fits_any = false;
            for (const auto& p : s.pattern)
                if (fits(p, r, cols)) {
                    fits_any = true;
                    break;
                }
            if (fits_any) continue;
            bool apart = true;
            for (std::size_t c : chosen)
                if (weakly_similar(r, t_.row(c), cols)) {
                    apart = false;
                    break;
                }
            if (apart) chosen.push_back(active_[d]);
        }
        return chosen.size();
    }

    void dfs(std::size_t depth);
    bool done() const { return found_ && best_ <= stop_at_; }

    const IncompleteTable& t_;
    const std::vector<std::size_t>& rows_;
    AttributeSet xs_, ys_;
    const std::vector<ActiveDomain>& domains_;
    std::uint64_t& nodes_;
    std::uint64_t budget_;

    std::vector<std::size_t> active_;
    std::size_t allnull_ = 0;
    Side x_, y_;
    std::vector<std::vector<std::size_t>> pair_count_;
    std::size_t pairs_ = 0;
    std::vector<std::size_t> ax_, ay_;

    std::size_t best_ = kInfinite;
    std::size_t stop_at_ = 0;
    bool found_ = false;
    std::vector<std::size_t> best_ax_, best_ay_;
    std::vector<Row> best_xp_, best_yp_;
};

void CjSearch::dfs(std::size_t depth) {
    if (depth == active_.size()) {
        std::size_t v = after_nulls(missing_now());
        if (v < best_) {
            best_ = v;
            found_ = true;
            best_ax_ = ax_;
            best_ay_ = ay_;
            best_xp_ = x_.pattern;
            best_yp_ = y_.pattern;
        }
        return;
    }
    if (++nodes_ > budget_) throw BudgetExceeded("cross-join search", nodes_ - 1);
    {
        const std::size_t remaining = active_.size() - depth;
        const auto nx = static_cast<std::int64_t>(x_.pattern.size() + forced_new(x_, xs_, depth));
        const auto ny = static_cast<std::int64_t>(y_.pattern.size() + forced_new(y_, ys_, depth));
        std::int64_t lb = nx * ny - static_cast<std::int64_t>(pairs_ + remaining + allnull_);
        if (lb < 0) lb = 0;
        if (static_cast<std::size_t>(lb) >= best_) return;
    }

    auto r = t_.row(active_[depth]);
    const std::size_t nx = x_.pattern.size(), ny = y_.pattern.size();
    std::vector<std::size_t> xo, yo;
    for (std::size_t c = 0; c < nx; ++c)
        if (fits(x_.pattern[c], r, xs_)) xo.push_back(c);
    if (!xs_.empty() || nx == 0) xo.push_back(nx);
    for (std::size_t c = 0; c < ny; ++c)
        if (fits(y_.pattern[c], r, ys_)) yo.push_back(c);
    if (!ys_.empty() || ny == 0) yo.push_back(ny);

    struct Option {
        std::size_t missing, xi, yi;
    };
    std::vector<Option> opts;
    for (std::size_t xi : xo)
        for (std::size_t yi : yo) {
            std::size_t nx2 = nx + (xi == nx), ny2 = ny + (yi == ny);
            std::size_t p2 = pairs_ + (pair_count_[xi][yi] == 0 ? 1 : 0);
            opts.push_back({nx2 * ny2 - p2, xi, yi});
        }
    std::stable_sort(opts.begin(), opts.end(), [](const Option& a, const Option& b) { return a.missing < b.missing; });

    auto join = [&](Side& s, std::size_t c, const AttributeSet& cols, Row& saved) {
        if (c == s.pattern.size()) {
            s.pattern.push_back(project_row(r, cols));
            s.size.push_back(1);
            return;
        }
        saved = s.pattern[c];
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (r[cols[j]] != kNull) s.pattern[c][j] = r[cols[j]];
        ++s.size[c];
    };
    auto leave = [](Side& s, std::size_t c, Row& saved) {
        if (--s.size[c] == 0) {
            s.pattern.pop_back();
            s.size.pop_back();
        } else {
            s.pattern[c] = std::move(saved);
        }
    };

    for (const Option& o : opts) {
        Row sx, sy;
        join(x_, o.xi, xs_, sx);
        join(y_, o.yi, ys_, sy);
        if (pair_count_[o.xi][o.yi]++ == 0) ++pairs_;
        ax_[depth] = o.xi;
        ay_[depth] = o.yi;
        dfs(depth + 1);
        if (--pair_count_[o.xi][o.yi] == 0) --pairs_;
        leave(y_, o.yi, sy);
        leave(x_, o.xi, sx);
        if (done()) return;
    }
}

std::vector<Row> CjSearch::concrete() const {
    auto fill = [&](Row p, const AttributeSet& cols) {
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (p[j] == kNull) p[j] = smallest(domains_, cols[j]);
        return p;
    };
    std::map<std::size_t, Row> out;
    std::set<Row> px, py;
    std::set<std::pair<Row, Row>> realized;
    for (std::size_t d = 0; d < active_.size(); ++d) {
        Row xv = fill(best_xp_[best_ax_[d]], xs_), yv = fill(best_yp_[best_ay_[d]], ys_);
        Row full(t_.row(active_[d]).begin(), t_.row(active_[d]).end());
        for (std::size_t j = 0; j < xs_.size(); ++j) full[xs_[j]] = xv[j];
        for (std::size_t j = 0; j < ys_.size(); ++j) full[ys_[j]] = yv[j];
        out[active_[d]] = std::move(full);
        px.insert(xv);
        py.insert(yv);
        realized.emplace(std::move(xv), std::move(yv));
    }
    std::vector<std::pair<Row, Row>> missing;
    for (const auto& a : px)
        for (const auto& b : py)
            if (!realized.count({a, b})) missing.emplace_back(a, b);
    if (px.empty())
        missing.emplace_back(fill(Row(xs_.size(), kNull), xs_), fill(Row(ys_.size(), kNull), ys_));
    else if (missing.empty())
        missing.push_back(*realized.begin());
    std::size_t next = 0;
    std::vector<Row> result;
    for (std::size_t i : rows_) {
        if (auto it = out.find(i); it != out.end()) {
            result.push_back(it->second);
            continue;
        }
        const auto& [xv, yv] = missing[next < missing.size() ? next : 0];
        ++next;
        Row full(t_.row(i).begin(), t_.row(i).end());
        for (std::size_t j = 0; j < xs_.size(); ++j) full[xs_[j]] = xv[j];
        for (std::size_t j = 0; j < ys_.size(); ++j) full[ys_[j]] = yv[j];
        result.push_back(std::move(full));
    }
    return result;
}

struct CjOutcome {
    std::size_t missing = 0;
    std::vector<Row> rows;  // completed on x and y, parallel to the input rows
};

// Cross join X x Y restricted to `rows`; overlap attributes must be constant.
std::optional<CjOutcome> cj_search(const IncompleteTable& t, const std::vector<std::size_t>& rows, const AttributeSet& x,
                                   const AttributeSet& y, const std::vector<ActiveDomain>& domains,
                                   std::size_t stop_at, std::size_t cutoff, std::uint64_t& nodes,
                                   std::uint64_t budget) {
    AttributeSet overlap = x & y;
    Row constant;
    for (std::size_t a : overlap) {
        ValueId v = kNull;
        for (std::size_t i : rows) {
            ValueId c = t.at(i, a);
            if (c == kNull) continue;
            if (v != kNull && c != v) return std::nullopt;
            v = c;
        }
        constant.push_back(v == kNull ? smallest(domains, a) : v);
    }
    CjSearch search(t, rows, x - overlap, y - overlap, domains, nodes, budget);
    auto best = search.run(stop_at, cutoff);
    if (!best) return std::nullopt;
    CjOutcome out;
    out.missing = *best;
    out.rows = search.concrete();
    for (auto& r : out.rows)
        for (std::size_t j = 0; j < overlap.size(); ++j) r[overlap[j]] = constant[j];
    return out;
}

// Rows realizing every missing X x Y pair of a complete table; other
// attributes copy the first row.
std::vector<Row> cj_missing_rows(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    std::set<Row> xs, ys, seen;
    AttributeSet xy = x | y;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        xs.insert(project_row(w.row(i), x));
        ys.insert(project_row(w.row(i), y));
        seen.insert(project_row(w.row(i), xy));
    }
    std::vector<Row> out;
    if (w.empty()) return out;
    Row base(w.row(0).begin(), w.row(0).end());
    for (const auto& a : xs)
        for (const auto& b : ys) {
            Row r = base;
            for (std::size_t k = 0; k < x.size(); ++k) r[x[k]] = a[k];
            for (std::size_t k = 0; k < y.size(); ++k) r[y[k]] = b[k];
            if (!seen.count(project_row(r, xy))) out.push_back(std::move(r));
        }
    return out;
}

// Rows realizing every missing (X, Y\X, Z) combination of a complete table.
std::vector<Row> mvd_missing_rows(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    AttributeSet yy = y - x, z = AttributeSet::all(w.arity()) - x - y;
    std::map<Row, std::pair<std::set<Row>, std::set<Row>>> cls;
    std::set<Row> seen;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        auto& e = cls[project_row(w.row(i), x)];
        e.first.insert(project_row(w.row(i), yy));
        e.second.insert(project_row(w.row(i), z));
        seen.insert(Row(w.row(i).begin(), w.row(i).end()));
    }
    std::vector<Row> out;
    for (const auto& [xv, e] : cls)
        for (const auto& a : e.first)
            for (const auto& b : e.second) {
                Row r(w.arity());
                for (std::size_t k = 0; k < x.size(); ++k) r[x[k]] = xv[k];
                for (std::size_t k = 0; k < yy.size(); ++k) r[yy[k]] = a[k];
                for (std::size_t k = 0; k < z.size(); ++k) r[z[k]] = b[k];
                if (!seen.count(r)) out.push_back(std::move(r));
            }
    return out;
}

// Minimum total missing count over X-assignments of the X-incomplete rows;
// within each X-class the dependency is a cross join of Y\X and Z.
class MvdSearch {
public:
    MvdSearch(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y, std::uint64_t budget)
        : t_(t), x_(x), yy_(y - x), z_(AttributeSet::all(t.arity()) - x - y), budget_(budget),
          domains_(active_domains(t)) {
        for (std::size_t i = 0; i < t.rows(); ++i) {
            if (is_total(t.row(i), x_)) continue;
            open_.push_back(i);
            auto& ex = exts_.emplace_back();
            for_each_extension(t, i, x_, domains_, [&](const Row& e) {
                ex.push_back(e);
                return true;
            });
        }
        assignment_.resize(t.rows());
        for (std::size_t i = 0; i < t.rows(); ++i)
            if (is_total(t.row(i), x_)) assignment_[i] = project_row(t.row(i), x_);
    }

    std::optional<std::size_t> run(std::size_t stop_at, std::size_t cutoff) {
        best_ = cutoff;
        stop_at_ = stop_at;
        found_ = false;
        if (yy_.empty() || z_.empty()) {
            best_ = 0;
            found_ = true;
            best_assignment_ = assignment_;
            for (std::size_t k = 0; k < open_.size(); ++k) best_assignment_[open_[k]] = exts_[k].front();
            return best_;
        }
        dfs(0);
        if (!found_) return std::nullopt;
        return best_;
    }

    // World realizing the best assignment.
    IncompleteTable world() {
        IncompleteTable w = t_;
        for (std::size_t i = 0; i < t_.rows(); ++i)
            for (std::size_t j = 0; j < x_.size(); ++j) w.set(i, x_[j], best_assignment_[i][j]);
        if (!yy_.empty() && !z_.empty()) {
            for (const auto& [xv, rows] : classes(best_assignment_)) {
                auto out = cj_search(t_, rows, yy_, z_, domains_, 0, kInfinite, nodes_, budget_);
                for (std::size_t k = 0; k < rows.size(); ++k)
                    for (std::size_t a : yy_ | z_) w.set(rows[k], a, out->rows[k][a]);
            }
        }
        return fill_nulls(w);
    }

private:
    std::map<Row, std::vector<std::size_t>> classes(const std::vector<Row>& assignment) const {
        std::map<Row, std::vector<std::size_t>> cls;
        for (std::size_t i = 0; i < t_.rows(); ++i) cls[assignment[i]].push_back(i);
        return cls;
    }

    std::size_t class_missing(const std::vector<std::size_t>& rows) {
        std::vector<Row> key;
        AttributeSet yz = yy_ | z_;
        for (std::size_t i : rows) key.push_back(project_row(t_.row(i), yz));
        std::sort(key.begin(), key.end());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto out = cj_search(t_, rows, yy_, z_, domains_, 0, kInfinite, nodes_, budget_);
        return memo_[key] = out->missing;
    }

    void dfs(std::size_t k) {
        if (found_ && best_ <= stop_at_) return;
        if (++nodes_ > budget_) throw BudgetExceeded("spMVD search", nodes_ - 1);
        if (k == open_.size()) {
            std::size_t sum = 0;
            for (const auto& [xv, rows] : classes(assignment_)) {
                sum += class_missing(rows);
                if (sum >= best_) return;
            }
            best_ = sum;
            found_ = true;
            best_assignment_ = assignment_;
            return;
        }
        for (const Row& e : exts_[k]) {
            assignment_[open_[k]] = e;
            dfs(k + 1);
            if (found_ && best_ <= stop_at_) return;
        }
    }

    const IncompleteTable& t_;
    AttributeSet x_, yy_, z_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<ActiveDomain> domains_;
    std::vector<std::size_t> open_;
    std::vector<std::vector<Row>> exts_;
    std::vector<Row> assignment_, best_assignment_;
    std::map<std::vector<Row>, std::size_t> memo_;
    std::size_t best_ = kInfinite;
    std::size_t stop_at_ = 0;
    bool found_ = false;
};

Verdict holds_with_world(const IncompleteTable& t, bool holds, IncompleteTable world) {
    Verdict v;
    v.holds = holds;
    if (holds) v.world = make_world(std::move(world), identity(t.rows()));
    return v;
}

// Size-ordered lexicographic subset search with a supplied check.
template <class Check>
RemovalResult subset_removal(const IncompleteTable& t, const Constraint& c, const TupleGenOptions& opt,
                             Check&& check) {
    validate(c, t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    const std::size_t n = t.rows();
    std::uint64_t tried = 0;
    for (std::size_t s = 0; s <= n; ++s) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            if (++tried > opt.node_budget) throw BudgetExceeded("removal subset search", tried - 1);
            std::vector<std::size_t> kept;
            for (std::size_t i = 0, j = 0; i < n; ++i) {
                if (j < s && idx[j] == i)
                    ++j;
                else
                    kept.push_back(i);
            }
            Verdict v = check(t.select(kept));
            if (v.holds) {
                RemovalResult res;
                res.value = Ratio(static_cast<std::int64_t>(s), static_cast<std::int64_t>(n));
                res.removed = idx;
                if (v.world) {
                    v.world->origin = kept;
                    res.world = std::move(v.world);
                }
                return res;
            }
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw InvalidInput("unreachable: removing every row always satisfies the constraint");
}

}  // namespace

WeakSimilarityGraph weak_similarity_graph(const IncompleteTable& t, const AttributeSet& x) {
    WeakSimilarityGraph g;
    g.vertices = t.rows();
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = i + 1; j < t.rows(); ++j)
            if (weakly_similar(t.row(i), t.row(j), x)) g.edges.emplace_back(i, j);
    return g;
}

Verdict check_spmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                    const TupleGenOptions& opt) {
    validate(Constraint::mvd(x, y), t.schema());
    if (t.empty()) return holds_with_world(t, true, t);
    MvdSearch search(t, x, y, opt.node_budget);
    auto best = search.run(0, 1);
    if (!best) return Verdict{};
    return holds_with_world(t, true, search.world());
}

bool check_nmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y) {
    validate(Constraint::nmvd(x, y), t.schema());
    AttributeSet xy = x | y;
    AttributeSet xr = x | (AttributeSet::all(t.arity()) - y);
    std::vector<std::size_t> total;
    for (std::size_t i = 0; i < t.rows(); ++i)
        if (is_total(t.row(i), x)) total.push_back(i);
    for (std::size_t i : total)
        for (std::size_t j : total) {
            if (i == j || !strongly_similar(t.row(i), t.row(j), x)) continue;
            bool found = false;
            for (std::size_t k = 0; k < t.rows() && !found; ++k)
                found = strongly_similar(t.row(k), t.row(i), xy) && strongly_similar(t.row(k), t.row(j), xr);
            if (!found) return false;
        }
    return true;
}

Verdict check_spcj_singular(const IncompleteTable& t, std::size_t a, std::size_t b) {
    validate(Constraint::cj(AttributeSet{a}, AttributeSet{b}), t.schema());
    if (a == b) throw InvalidInput("singular cross join needs two distinct attributes");
    if (t.empty()) return holds_with_world(t, true, t);
    const ActiveDomain da = active_domain(t, a), db = active_domain(t, b);
    const std::size_t right = da.size() * db.size();
    Verdict v;
    if (right > t.rows()) return v;
    BipartiteGraph g;
    g.right_count = right;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        auto& adj = g.adj.emplace_back();
        ValueId va = t.at(i, a), vb = t.at(i, b);
        for (std::size_t p = 0; p < da.size(); ++p) {
            if (va != kNull && va != da.values[p]) continue;
            for (std::size_t q = 0; q < db.size(); ++q)
                if (vb == kNull || vb == db.values[q]) adj.push_back(static_cast<std::uint32_t>(p * db.size() + q));
        }
    }
    MatchingResult m = hopcroft_karp(g);
    if (m.size < right) {
        for (std::size_t i = 0; i < t.rows(); ++i)
            if (m.mate_left[i] == kUnmatched) v.violation.push_back(i);
        return v;
    }
    IncompleteTable w = t;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        std::int64_t r = m.mate_left[i];
        if (r == kUnmatched) continue;
        w.set(i, a, da.values[static_cast<std::size_t>(r) / db.size()]);
        w.set(i, b, db.values[static_cast<std::size_t>(r) % db.size()]);
    }
    return holds_with_world(t, true, fill_nulls(w));
}

Verdict check_spcj_general(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                           const TupleGenOptions& opt) {
    validate(Constraint::cj(x, y), t.schema());
    if (t.empty()) return holds_with_world(t, true, t);
    std::uint64_t nodes = 0;
    auto out = cj_search(t, identity(t.rows()), x, y, active_domains(t), 0, 1, nodes, opt.node_budget);
    if (!out) return Verdict{};
    IncompleteTable w = t;
    AttributeSet xy = x | y;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t a : xy) w.set(i, a, out->rows[i][a]);
    return holds_with_world(t, true, fill_nulls(w));
}

Verdict check_spcj(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                   const TupleGenOptions& opt) {
    CjInstance cj{x, y};
    if (cj.singular()) return check_spcj_singular(t, x[0], y[0]);
    return check_spcj_general(t, x, y, opt);
}

std::optional<std::size_t> cj_min_missing(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                                          const TupleGenOptions& opt) {
    validate(Constraint::cj(x, y), t.schema());
    std::uint64_t nodes = 0;
    auto out = cj_search(t, identity(t.rows()), x, y, active_domains(t), 0, kInfinite, nodes, opt.node_budget);
    if (!out) return std::nullopt;
    return out->missing;
}

RemovalResult g3_spmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                       const TupleGenOptions& opt) {
    return subset_removal(t, Constraint::mvd(x, y), opt,
                          [&](const IncompleteTable& rest) { return check_spmvd(rest, x, y, opt); });
}

RemovalResult g3_spcj(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                      const TupleGenOptions& opt) {
    return subset_removal(t, Constraint::cj(x, y), opt,
                          [&](const IncompleteTable& rest) { return check_spcj(rest, x, y, opt); });
}

AdditionResult g5_spmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                        const TupleGenOptions& opt) {
    validate(Constraint::mvd(x, y), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    std::size_t best = kInfinite;
    std::vector<Row> best_added;
    IncompleteTable best_world;
    const std::size_t bmax = count_nontotal(t, x);
    for (std::size_t b = 0; b <= bmax && b < best; ++b) {
        auto fresh = x_fresh_rows(t, x, b);
        IncompleteTable ext = t.with_rows(fresh);
        MvdSearch search(ext, x, y, opt.node_budget);
        auto m = search.run(0, best - b);
        if (!m) continue;
        best = b + *m;
        IncompleteTable w = search.world();
        auto fill = mvd_missing_rows(w, x, y);
        best_added = std::move(fresh);
        for (std::size_t i = 0; i < fill.size(); ++i) best_added.push_back(null_row(t));
        best_world = w.with_rows(fill);
    }
    AdditionResult res;
    res.value = Ratio(static_cast<std::int64_t>(best), static_cast<std::int64_t>(t.rows()));
    res.world = make_world(best_world, identity(t.rows()), best_added.size());
    res.added = std::move(best_added);
    return res;
}

AdditionResult g5_spcj(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                       const TupleGenOptions& opt) {
    validate(Constraint::cj(x, y), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    AdditionResult res;
    std::uint64_t nodes = 0;
    auto out = cj_search(t, identity(t.rows()), x, y, active_domains(t), 0, kInfinite, nodes, opt.node_budget);
    if (!out) return res;
    IncompleteTable w = t;
    AttributeSet xy = x | y;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t a : xy) w.set(i, a, out->rows[i][a]);
    w = fill_nulls(w);
    auto fill = cj_missing_rows(w, x, y);
    res.value = Ratio(static_cast<std::int64_t>(fill.size()), static_cast<std::int64_t>(t.rows()));
    res.added.assign(fill.size(), null_row(t));
    res.world = make_world(w.with_rows(fill), identity(t.rows()), fill.size());
    return res;
}

}  // namespace spc
