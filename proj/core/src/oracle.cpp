#include "spc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "spc/errors.hpp"
#include "spc/repair.hpp"

namespace spc {

std::uint64_t count_spworlds(const IncompleteTable& t, std::uint64_t limit) {
    auto domains = active_domains(t);
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t a = 0; a < t.arity(); ++a) {
            if (t.at(i, a) != kNull) continue;
            std::uint64_t d = domains[a].size();
            if (n > limit / d) return limit;
            n *= d;
        }
    return std::min(n, limit);
}

SpWorldEnumerator::SpWorldEnumerator(const IncompleteTable& t, std::uint64_t budget)
    : world_(t), domains_(active_domains(t)) {
    total_ = count_spworlds(t, budget == UINT64_MAX ? UINT64_MAX : budget + 1);
    if (total_ > budget) throw BudgetExceeded("spWorld enumeration exceeds budget", budget);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t a = 0; a < t.arity(); ++a)
            if (t.at(i, a) == kNull) {
                cells_.emplace_back(i, a);
                cell_domain_.push_back(&domains_[a]);
            }
    digit_.assign(cells_.size(), 0);
}

bool SpWorldEnumerator::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        for (std::size_t c = 0; c < cells_.size(); ++c)
            world_.set(cells_[c].first, cells_[c].second, cell_domain_[c]->values[0]);
        return true;
    }
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        if (++digit_[c] < cell_domain_[c]->size()) {
            world_.set(cells_[c].first, cells_[c].second, cell_domain_[c]->values[digit_[c]]);
            return true;
        }
        digit_[c] = 0;
        world_.set(cells_[c].first, cells_[c].second, cell_domain_[c]->values[0]);
    }
    done_ = true;
    return false;
}

SpWorld SpWorldEnumerator::spworld() const {
    std::vector<std::size_t> origin(world_.rows());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
    return make_world(world_, origin);
}

namespace {

Row proj(std::span<const ValueId> r, const AttributeSet& x) {
    Row p;
    p.reserve(x.size());
    for (std::size_t a : x) p.push_back(r[a]);
    return p;
}

AttributeSet rest_of(std::size_t arity, const AttributeSet& x, const AttributeSet& y) {
    return AttributeSet::all(arity) - x - y;
}

}  // namespace

bool holds_key(const IncompleteTable& w, const AttributeSet& k) {
    std::set<Row> seen;
    for (std::size_t i = 0; i < w.rows(); ++i)
        if (!seen.insert(proj(w.row(i), k)).second) return false;
    return true;
}

bool holds_fd(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    std::map<Row, Row> m;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        auto [it, inserted] = m.try_emplace(proj(w.row(i), x), proj(w.row(i), y));
        if (!inserted && it->second != proj(w.row(i), y)) return false;
    }
    return true;
}

std::size_t mvd_missing(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    AttributeSet yy = y - x;
    AttributeSet z = rest_of(w.arity(), x, y);
    struct Cls {
        std::set<Row> ys, zs;
        std::set<std::pair<Row, Row>> pairs;
    };
    std::map<Row, Cls> classes;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        auto& c = classes[proj(w.row(i), x)];
        Row a = proj(w.row(i), yy), b = proj(w.row(i), z);
        c.ys.insert(a);
        c.zs.insert(b);
        c.pairs.emplace(std::move(a), std::move(b));
    }
    std::size_t missing = 0;
    for (auto& [k, c] : classes) missing += c.ys.size() * c.zs.size() - c.pairs.size();
    return missing;
}

bool holds_mvd(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    return mvd_missing(w, x, y) == 0;
}

std::optional<std::size_t> cj_missing(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    AttributeSet overlap = x & y;
    for (std::size_t a : overlap)
        for (std::size_t i = 1; i < w.rows(); ++i)
            if (w.at(i, a) != w.at(0, a)) return std::nullopt;
    std::set<Row> xs, ys;
    std::set<std::pair<Row, Row>> pairs;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        Row a = proj(w.row(i), x), b = proj(w.row(i), y);
        xs.insert(a);
        ys.insert(b);
        pairs.emplace(std::move(a), std::move(b));
    }
    return xs.size() * ys.size() - pairs.size();
}

bool holds_cj(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y) {
    auto m = cj_missing(w, x, y);
    return m && *m == 0;
}

namespace {

// Lien's condition with strong equality over distinct X-total tuples.
bool nmvd_direct(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y) {
    AttributeSet xy = x | y;
    AttributeSet xr = x | (AttributeSet::all(t.arity()) - y);
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (!is_total(t.row(i), x)) continue;
        for (std::size_t j = 0; j < t.rows(); ++j) {
            if (i == j || !is_total(t.row(j), x) || !strongly_similar(t.row(i), t.row(j), x)) continue;
            bool found = false;
            for (std::size_t k = 0; k < t.rows() && !found; ++k)
                found = strongly_similar(t.row(k), t.row(i), xy) && strongly_similar(t.row(k), t.row(j), xr);
            if (!found) return false;
        }
    }
    return true;
}

// Columns the constraint depends on; MVDs need the whole schema.
AttributeSet relevant(const IncompleteTable& t, const Constraint& c) {
    switch (c.kind) {
    case ConstraintKind::SpKey: return c.lhs;
    case ConstraintKind::SpFd:
    case ConstraintKind::SpCj: return c.lhs | c.rhs;
    default: return AttributeSet::all(t.arity());
    }
}

// Lifts a world of the projection onto cols back to the full table.
SpWorld lift(const IncompleteTable& t, const IncompleteTable& pw, const AttributeSet& cols) {
    IncompleteTable full = t;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) full.set(i, cols[k], pw.at(i, k));
    full = fill_nulls(full);
    std::vector<std::size_t> origin(t.rows());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
    return make_world(std::move(full), origin);
}

}  // namespace

bool holds(const IncompleteTable& w, const Constraint& c) {
    switch (c.kind) {
    case ConstraintKind::SpKey: return holds_key(w, c.lhs);
    case ConstraintKind::SpFd: return holds_fd(w, c.lhs, c.rhs);
    case ConstraintKind::SpMvd:
    case ConstraintKind::Nmvd: return holds_mvd(w, c.lhs, c.rhs);
    case ConstraintKind::SpCj: return holds_cj(w, c.lhs, c.rhs);
    }
    return false;
}

Verdict oracle_check(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt) {
    validate(c, t.schema());
    Verdict v;
    if (c.kind == ConstraintKind::Nmvd) {
        v.holds = nmvd_direct(t, c.lhs, c.rhs);
        return v;
    }
    if (t.empty()) {
        v.holds = true;
        v.world = make_world(t, {});
        return v;
    }
    AttributeSet cols = relevant(t, c);
    IncompleteTable p = project(t, cols);
    Constraint local{c.kind, remap(c.lhs, cols), remap(c.rhs, cols)};
    SpWorldEnumerator en(p, opt.world_budget);
    while (en.next()) {
        if (holds(en.world(), local)) {
            v.holds = true;
            v.world = lift(t, en.world(), cols);
            return v;
        }
    }
    return v;
}

RemovalResult oracle_g3(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt) {
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    const std::size_t n = t.rows();
    RemovalResult res;
    res.precondition = total_part_holds(t, c);
    for (std::size_t s = 0; s <= n; ++s) {
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            IncompleteTable rest = t.without(idx);
            Verdict v = oracle_check(rest, c, opt);
            if (v.holds) {
                res.value = Ratio(static_cast<std::int64_t>(s), static_cast<std::int64_t>(n));
                res.removed = idx;
                if (v.world) {
                    std::vector<std::size_t> kept;
                    std::size_t j = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (j < idx.size() && idx[j] == i)
                            ++j;
                        else
                            kept.push_back(i);
                    }
                    v.world->origin = kept;
                    res.world = std::move(v.world);
                }
                return res;
            }
            // next combination in lexicographic order
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw InvalidInput("unreachable: removing every row always satisfies the constraint");
}

namespace {

struct MinWorld {
    std::size_t missing = std::numeric_limits<std::size_t>::max();
    IncompleteTable world;
};

// Minimum missing-pair count over all spWorlds of t (projected to cols).
MinWorld min_missing(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt) {
    AttributeSet cols = c.kind == ConstraintKind::SpCj ? (c.lhs | c.rhs) : AttributeSet::all(t.arity());
    IncompleteTable p = project(t, cols);
    AttributeSet x = remap(c.lhs, cols), y = remap(c.rhs, cols);
    MinWorld best;
    SpWorldEnumerator en(p, opt.world_budget);
    while (en.next()) {
        std::optional<std::size_t> m =
            c.kind == ConstraintKind::SpCj ? cj_missing(en.world(), x, y) : mvd_missing(en.world(), x, y);
        if (m && *m < best.missing) {
            best.missing = *m;
            best.world = lift(t, en.world(), cols).table;
            if (*m == 0) break;
        }
    }
    return best;
}

// Complete rows realizing every missing pair of the world w.
std::vector<Row> missing_rows(const IncompleteTable& w, const Constraint& c) {
    std::vector<Row> out;
    const std::size_t n = w.arity();
    if (c.kind == ConstraintKind::SpCj) {
        std::set<Row> xs, ys, seen;
        AttributeSet xy = c.lhs | c.rhs;
        for (std::size_t i = 0; i < w.rows(); ++i) {
            xs.insert(proj(w.row(i), c.lhs));
            ys.insert(proj(w.row(i), c.rhs));
            seen.insert(proj(w.row(i), xy));
        }
        Row base(w.row(0).begin(), w.row(0).end());
        for (const auto& a : xs)
            for (const auto& b : ys) {
                Row r = base;
                for (std::size_t k = 0; k < c.lhs.size(); ++k) r[c.lhs[k]] = a[k];
                for (std::size_t k = 0; k < c.rhs.size(); ++k) r[c.rhs[k]] = b[k];
                if (!seen.count(proj(r, xy))) out.push_back(r);
            }
        return out;
    }
    AttributeSet yy = c.rhs - c.lhs, z = rest_of(n, c.lhs, c.rhs);
    std::map<Row, std::pair<std::set<Row>, std::set<Row>>> cls;
    std::set<Row> seen;
    for (std::size_t i = 0; i < w.rows(); ++i) {
        auto& e = cls[proj(w.row(i), c.lhs)];
        e.first.insert(proj(w.row(i), yy));
        e.second.insert(proj(w.row(i), z));
        seen.insert(Row(w.row(i).begin(), w.row(i).end()));
    }
    for (const auto& [xv, e] : cls)
        for (const auto& a : e.first)
            for (const auto& b : e.second) {
                Row r(n);
                for (std::size_t k = 0; k < c.lhs.size(); ++k) r[c.lhs[k]] = xv[k];
                for (std::size_t k = 0; k < yy.size(); ++k) r[yy[k]] = a[k];
                for (std::size_t k = 0; k < z.size(); ++k) r[z[k]] = b[k];
                if (!seen.count(r)) out.push_back(r);
            }
    return out;
}

AdditionResult addition_result(const IncompleteTable& t, std::vector<Row> added, SpWorld world) {
    AdditionResult res;
    res.value = Ratio(static_cast<std::int64_t>(added.size()), static_cast<std::int64_t>(t.rows()));
    res.added = std::move(added);
    res.world = std::move(world);
    return res;
}

}  // namespace

AdditionResult oracle_g5(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt) {
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    validate(c, t.schema());
    AdditionResult none;
    none.precondition = total_part_holds(t, c);

    switch (c.kind) {
    case ConstraintKind::SpKey:
    case ConstraintKind::SpFd: {
        Verdict v = oracle_check(t, c, opt);
        if (v.holds) return addition_result(t, {}, std::move(*v.world));
        if (!none.precondition) return none;
        const std::size_t kmax = count_nontotal(t, c.lhs);
        for (std::size_t k = 1; k <= kmax; ++k) {
            auto added = c.kind == ConstraintKind::SpKey ? replicated_fresh_rows(t, k) : x_fresh_rows(t, c.lhs, k);
            Verdict w = oracle_check(t.with_rows(added), c, opt);
            if (w.holds) {
                w.world->origin.assign(t.rows() + k, SpWorld::kSynthetic);
                for (std::size_t i = 0; i < t.rows(); ++i) w.world->origin[i] = i;
                return addition_result(t, std::move(added), std::move(*w.world));
            }
        }
        return none;
    }
    case ConstraintKind::SpMvd: {
        // b X-fresh rows, then all-NULL rows to fill the remaining gaps.
        std::size_t best = std::numeric_limits<std::size_t>::max();
        std::vector<Row> best_added;
        IncompleteTable best_world;
        const std::size_t bmax = count_nontotal(t, c.lhs);
        for (std::size_t b = 0; b <= bmax && b < best; ++b) {
            auto fresh = x_fresh_rows(t, c.lhs, b);
            IncompleteTable ext = t.with_rows(fresh);
            MinWorld mw = min_missing(ext, c, opt);
            if (b + mw.missing < best) {
                best = b + mw.missing;
                best_added = fresh;
                auto fill = missing_rows(mw.world, c);
                for (std::size_t i = 0; i < fill.size(); ++i) best_added.push_back(null_row(t));
                best_world = mw.world.with_rows(fill);
            }
        }
        std::vector<std::size_t> origin(t.rows());
        for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
        SpWorld w = make_world(best_world, origin, best_added.size());
        return addition_result(t, std::move(best_added), std::move(w));
    }
    case ConstraintKind::SpCj: {
        MinWorld mw = min_missing(t, c, opt);
        if (mw.missing == std::numeric_limits<std::size_t>::max()) return none;
        auto fill = missing_rows(mw.world, c);
        std::vector<Row> added(fill.size(), null_row(t));
        std::vector<std::size_t> origin(t.rows());
        for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
        SpWorld w = make_world(mw.world.with_rows(fill), origin, fill.size());
        return addition_result(t, std::move(added), std::move(w));
    }
    case ConstraintKind::Nmvd: throw InvalidInput("g5 is not defined for nmvd");
    }
    return none;
}

std::optional<std::size_t> oracle_g5_exhaustive(const IncompleteTable& t, const Constraint& c, std::size_t max_rows,
                                                std::size_t fresh_per_column, const OracleOptions& opt) {
    if (oracle_check(t, c, opt).holds) return 0;
    // Candidate cell values per column.
    std::vector<std::vector<ValueId>> choices(t.arity());
    for (std::size_t a = 0; a < t.arity(); ++a) {
        auto d = active_domain(t, a);
        if (!d.degenerate) choices[a] = d.values;
        for (std::size_t f = 0; f < fresh_per_column; ++f) choices[a].push_back(t.dictionary()->fresh());
        choices[a].push_back(kNull);
    }
    std::vector<Row> candidates{Row{}};
    for (std::size_t a = 0; a < t.arity(); ++a) {
        std::vector<Row> next;
        for (const auto& r : candidates)
            for (ValueId v : choices[a]) {
                Row s = r;
                s.push_back(v);
                next.push_back(std::move(s));
            }
        candidates = std::move(next);
    }
    for (std::size_t k = 1; k <= max_rows; ++k) {
        // multisets of size k as non-decreasing index vectors
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            std::vector<Row> add;
            for (std::size_t i : idx) add.push_back(candidates[i]);
            if (oracle_check(t.with_rows(add), c, opt).holds) return k;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == candidates.size() - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[i - 1];
        }
    }
    return std::nullopt;
}

}  // namespace spc
