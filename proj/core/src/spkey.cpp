#include "spc/spkey.hpp"

#include <set>

#include "spc/errors.hpp"
#include "spc/repair.hpp"

namespace spc {

namespace {

std::size_t effective_cap(const IncompleteTable& t, const KeyOptions& opt) {
    return opt.cap ? std::max(opt.cap, t.rows() + 1) : t.rows() + 1;
}

// World from a matching that covers every row: K columns take the matched
// extension, the remaining NULLs the smallest active-domain value.
SpWorld world_from(const IncompleteTable& t, const AttributeSet& k, const ExtensionMatching& em,
                   const std::vector<std::size_t>& origin) {
    IncompleteTable w = t;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j) w.set(i, k[j], em.extension[i][j]);
    return make_world(fill_nulls(w), origin);
}

std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

Verdict check_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt) {
    validate(Constraint::key(k), t.schema());
    Verdict v;
    if (t.empty()) {
        v.holds = true;
        v.world = make_world(t, {});
        return v;
    }
    ExtensionGraph g = build_extension_graph(t, k, effective_cap(t, opt));
    ExtensionMatching em = max_matching(t, g);
    v.holds = em.size == t.rows();
    if (v.holds) {
        v.world = world_from(t, k, em, identity(t.rows()));
    } else {
        for (std::size_t i = 0; i < t.rows(); ++i)
            if (em.extension[i].empty()) v.violation.push_back(i);
    }
    return v;
}

RemovalResult g3_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt) {
    validate(Constraint::key(k), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    const std::size_t n = t.rows();
    ExtensionGraph g = build_extension_graph(t, k, effective_cap(t, opt));
    RemovalResult res;
    res.precondition = total_part_holds(t, Constraint::key(k));

    // Rows with more non-NULL key cells are matched first, so the K-total
    // part stays whenever it satisfies the key. Removing rows can empty an
    // active-domain value that a kept row's extension relies on; carriers of
    // such values are promoted and the matching recomputed.
    const std::size_t top = k.size() + 1;
    std::vector<std::size_t> priority(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a : k)
            if (t.at(i, a) != kNull) ++priority[i];

    std::vector<std::size_t> kept;
    for (std::size_t round = 0; round <= opt.witness_rounds; ++round) {
        ExtensionMatching em = max_matching(t, g, hopcroft_karp_prioritized(g.graph, priority));
        kept.clear();
        res.removed.clear();
        for (std::size_t i = 0; i < n; ++i) (em.extension[i].empty() ? res.removed : kept).push_back(i);
        Verdict v = check_spkey(t.select(kept), k, opt);
        if (v.holds) {
            v.world->origin = kept;
            res.world = std::move(v.world);
            break;
        }
        // Values used by kept extensions that no kept row carries.
        std::set<std::pair<std::size_t, ValueId>> carried, lost;
        for (std::size_t i : kept)
            for (std::size_t a : k)
                if (t.at(i, a) != kNull) carried.emplace(a, t.at(i, a));
        for (std::size_t i : kept)
            for (std::size_t j = 0; j < k.size(); ++j)
                if (!carried.count({k[j], em.extension[i][j]})) lost.emplace(k[j], em.extension[i][j]);
        bool promoted = false;
        for (std::size_t i : res.removed)
            for (std::size_t a : k)
                if (priority[i] < top && lost.count({a, t.at(i, a)})) {
                    priority[i] = top;
                    promoted = true;
                }
        if (!promoted) break;
    }
    res.value = Ratio(static_cast<std::int64_t>(n - kept.size()), static_cast<std::int64_t>(n));
    if (res.world) return res;

    // Hill climbing over single swaps, scored by how many kept rows their
    // own domains can match.
    {
        auto score = [&](const std::vector<std::size_t>& rows) {
            IncompleteTable rest = t.select(rows);
            ExtensionGraph h = build_extension_graph(rest, k, effective_cap(rest, opt));
            return max_matching(rest, h).size;
        };
        std::size_t current = score(kept), evals = 0;
        bool improved = true;
        while (improved && current < kept.size() && evals < opt.witness_swaps) {
            improved = false;
            for (std::size_t ui = 0; ui < res.removed.size() && !improved && evals < opt.witness_swaps; ++ui)
                for (std::size_t ri = 0; ri < kept.size() && !improved && evals < opt.witness_swaps; ++ri) {
                    std::vector<std::size_t> trial = kept;
                    trial[ri] = res.removed[ui];
                    std::sort(trial.begin(), trial.end());
                    ++evals;
                    std::size_t sc = score(trial);
                    if (sc <= current) continue;
                    std::swap(kept[ri], res.removed[ui]);
                    kept = trial;
                    std::sort(res.removed.begin(), res.removed.end());
                    current = sc;
                    improved = true;
                }
        }
        if (current == kept.size()) {
            Verdict v = check_spkey(t.select(kept), k, opt);
            v.world->origin = kept;
            res.world = std::move(v.world);
            return res;
        }
    }
    if (n > opt.witness_search_rows) return res;

    // Small tables: the first valid removal set of the same size in
    // lexicographic order.
    const std::size_t s = n - kept.size();
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
        IncompleteTable rest = t.without(idx);
        Verdict v = check_spkey(rest, k, opt);
        if (v.holds) {
            kept.clear();
            for (std::size_t i = 0, j = 0; i < n; ++i) {
                if (j < s && idx[j] == i)
                    ++j;
                else
                    kept.push_back(i);
            }
            v.world->origin = kept;
            res.removed = idx;
            res.world = std::move(v.world);
            return res;
        }
        std::size_t i = s;
        while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    return res;
}

Ratio g4_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt) {
    validate(Constraint::key(k), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    ExtensionGraph g = build_extension_graph(t, k, std::max(opt.g4_cap, effective_cap(t, opt)));
    MatchingResult m = hopcroft_karp(g.graph);
    ComponentPartition part = hall_components(g, m);
    std::int64_t sat = 0, def_nu = 0;
    for (const auto& c : part.satisfied) sat += static_cast<std::int64_t>(c.left.size());
    for (const auto& c : part.deficient) def_nu += static_cast<std::int64_t>(c.nu);
    const auto n = static_cast<std::int64_t>(t.rows());
    return Ratio(n - (sat + def_nu), n + sat);
}

AdditionResult g5_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt) {
    validate(Constraint::key(k), t.schema());
    if (t.empty()) throw InvalidInput("measures need a non-empty table");
    if (!total_part_holds(t, Constraint::key(k)))
        throw PreconditionViolated("the K-total part repeats a key value; no addition can repair it");
    AdditionResult res;
    const auto n = static_cast<std::int64_t>(t.rows());
    Verdict v0 = check_spkey(t, k, opt);
    if (v0.holds) {
        res.value = Ratio(0, n);
        res.world = std::move(v0.world);
        return res;
    }
    if (k.size() == 1) return res;

    // Feasibility is monotone in the number of fresh rows.
    auto attempt = [&](std::size_t count) {
        auto rows = replicated_fresh_rows(t, count);
        Verdict v = check_spkey(t.with_rows(rows), k, opt);
        return std::make_pair(std::move(rows), std::move(v));
    };
    std::size_t lo = 1, hi = count_nontotal(t, k);
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

KeyMeasureReport measure_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt) {
    KeyMeasureReport r;
    r.key = k;
    Verdict v = check_spkey(t, k, opt);
    r.holds = v.holds;
    r.spworld_witness = std::move(v.world);
    RemovalResult g3 = g3_spkey(t, k, opt);
    r.g3 = g3.value;
    r.removal_witness = std::move(g3.removed);
    try {
        r.g4 = g4_spkey(t, k, opt);
    } catch (const UnmaterializedGraph&) {
    }
    r.precondition = g3.precondition;
    if (r.precondition) {
        AdditionResult g5 = g5_spkey(t, k, opt);
        r.g5 = g5.value;
        r.addition_witness = std::move(g5.added);
    }
    return r;
}

}  // namespace spc
