#include "spc/generators.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "spc/errors.hpp"
#include "spc/spfd.hpp"
#include "spc/spkey.hpp"
#include "spc/tuplegen.hpp"

namespace spc {

namespace {

constexpr std::int64_t kMaxMultiplier = 100000;

using Cells = std::vector<std::vector<std::string>>;

void validate_ratio(std::int64_t p, std::int64_t q) {
    if (q < 1 || p < 0 || p >= q)
        throw InvalidInput("invalid ratio " + std::to_string(p) + "/" + std::to_string(q) + ": need 0 <= p < q");
}

// Smallest valid multiplier, or the given one after validation.
std::int64_t pick_multiplier(std::int64_t c, const std::function<bool(std::int64_t)>& valid, const std::string& what) {
    if (c < 0) throw InvalidInput(what + ": multiplier must be non-negative");
    if (c > 0) {
        if (!valid(c)) throw InvalidInput(what + ": multiplier c = " + std::to_string(c) + " violates the construction");
        return c;
    }
    for (std::int64_t k = 1; k <= kMaxMultiplier; ++k)
        if (valid(k)) return k;
    throw InvalidInput(what + ": no valid multiplier up to " + std::to_string(kMaxMultiplier));
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

std::string num(std::int64_t v) { return std::to_string(v); }

void set_measures(GeneratedInstance& inst, std::int64_t g3, std::int64_t g5, std::int64_t n) {
    inst.expected["g3"] = Ratio(g3, n);
    inst.expected["g5"] = Ratio(g5, n);
    inst.expected["g3_minus_g5"] = Ratio(g3 - g5, n);
}

// Least y >= 0 with (y+1)d >= target, or -1 when d <= 1 makes it unbounded.
std::int64_t least_y(std::int64_t d, std::int64_t slope, std::int64_t target) {
    if (d <= slope) return -1;
    std::int64_t y = 0;
    while ((y + 1) * d < y * slope + target) ++y;
    return y;
}

// Lemma rows for G, one string vector per vertex.
Cells lemma_cells(const Graph& g) {
    Cells rows(g.n, std::vector<std::string>(g.n));
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t l = 0; l < g.n; ++l) rows[i][l] = l == i ? "1" : (g.adjacent(i, l) ? "" : "2");
    return rows;
}

GeneratedInstance cj_reduction(const Graph& encoded, const std::string& construction) {
    if (encoded.n == 0) throw InvalidInput(construction + ": graph needs at least one vertex");
    std::vector<std::string> names{"X"};
    for (auto& s : numbered("A", encoded.n)) names.push_back(s);
    Cells rows = lemma_cells(encoded);
    for (std::size_t i = 0; i < encoded.n; ++i) rows[i].insert(rows[i].begin(), num(static_cast<std::int64_t>(i + 1)));
    GeneratedInstance inst;
    inst.table = IncompleteTable::from_strings(names, rows);
    std::vector<std::size_t> y;
    for (std::size_t a = 1; a <= encoded.n; ++a) y.push_back(a);
    inst.constraint = Constraint::cj(AttributeSet{0}, AttributeSet(y));
    inst.provenance.construction = construction;
    inst.provenance.parameters["n"] = static_cast<std::int64_t>(encoded.n);
    return inst;
}

}  // namespace

Graph::Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edge_list) : n(vertices) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edge_list) {
        if (a >= n || b >= n) throw InvalidInput("edge endpoint outside the vertex range");
        if (a == b) throw InvalidInput("loops are not allowed");
        seen.emplace(std::min(a, b), std::max(a, b));
    }
    edges.assign(seen.begin(), seen.end());
}

bool Graph::adjacent(std::size_t i, std::size_t j) const {
    auto e = std::make_pair(std::min(i, j), std::max(i, j));
    return std::binary_search(edges.begin(), edges.end(), e);
}

Graph Graph::complement() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!adjacent(i, j)) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph Graph::complete(std::size_t n) { return empty(n).complement(); }

Graph Graph::path(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph Graph::cycle(std::size_t n) {
    Graph g = path(n);
    auto e = g.edges;
    if (n >= 3) e.emplace_back(0, n - 1);
    return Graph(n, std::move(e));
}

Graph Graph::empty(std::size_t n) { return Graph(n, {}); }

Graph Graph::from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1u) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

GeneratedInstance gen_prop3(std::int64_t p, std::int64_t q, std::int64_t c) {
    validate_ratio(p, q);
    c = pick_multiplier(c, [&](std::int64_t k) { return k * q - k * p - 1 >= 1; }, "prop3");
    const std::int64_t pp = c * p, qq = c * q, x = qq - pp - 1;
    const auto cols = static_cast<std::size_t>(pp + 2);
    Cells rows;
    for (std::int64_t i = 1; i <= x; ++i) {
        std::vector<std::string> r(cols, "1");
        r.back() = num(i);
        rows.push_back(std::move(r));
    }
    for (std::int64_t d = 0; d <= pp; ++d) {
        std::vector<std::string> r(cols, "1");
        r[static_cast<std::size_t>(d)] = "";
        rows.push_back(std::move(r));
    }
    GeneratedInstance inst;
    inst.table = IncompleteTable::from_strings(numbered("A", cols), rows);
    inst.constraint = Constraint::key(AttributeSet::all(cols));
    inst.provenance = {"prop3", {{"p", p}, {"q", q}, {"c", c}}};
    set_measures(inst, pp + 1, 1, qq);
    return inst;
}

GeneratedInstance gen_thm1(std::int64_t p, std::int64_t q, std::int64_t c) {
    validate_ratio(p, q);
    Cells rows;
    GeneratedInstance inst;
    auto total_rows = [&](std::int64_t count) {
        for (std::int64_t i = 1; i <= count; ++i) rows.push_back({"1", num(i)});
    };
    auto null_rows = [&](std::int64_t count) {
        for (std::int64_t i = 0; i < count; ++i) rows.push_back({"", ""});
    };
    std::string which;
    if (2 * p < q) {
        c = pick_multiplier(c, [&](std::int64_t k) { return k * q - k * p - 1 >= 1; }, "thm1");
        const std::int64_t pp = c * p, qq = c * q;
        total_rows(qq - pp - 1);
        null_rows(pp + 1);
        set_measures(inst, pp + 1, 1, qq);
        which = "below_half";
    } else if (2 * p == q) {
        c = pick_multiplier(c, [&](std::int64_t k) { return k * p >= 3; }, "thm1");
        const std::int64_t m = c * p;
        total_rows(m - 2);
        null_rows(m + 2);
        set_measures(inst, m + 2, 2, 2 * m);
        which = "half";
    } else {
        // y fresh rows must open enough key combinations for all rows plus
        // themselves, and y - 1 must not.
        auto params = [&](std::int64_t k, std::int64_t& y, std::int64_t& b) {
            const std::int64_t d = k * (q - p);
            y = least_y(d, 1, k * q);
            if (y < 0) return false;
            b = d - y;
            return b >= 1 && y * (d - 1) < k * q + y - 1;
        };
        std::int64_t y = 0, b = 0;
        c = pick_multiplier(c, [&](std::int64_t k) { return params(k, y, b); }, "thm1");
        params(c, y, b);
        const std::int64_t x = y + c * p;
        total_rows(b);
        null_rows(x);
        set_measures(inst, x, y, c * q);
        which = "above_half";
        inst.provenance.parameters["y"] = y;
        inst.provenance.parameters["b"] = b;
        inst.provenance.parameters["x"] = x;
    }
    inst.table = IncompleteTable::from_strings({"A1", "A2"}, rows);
    inst.constraint = Constraint::key(AttributeSet{0, 1});
    inst.provenance.construction = "thm1";
    inst.provenance.parameters["p"] = p;
    inst.provenance.parameters["q"] = q;
    inst.provenance.parameters["c"] = c;
    inst.provenance.parameters["case"] = which == "below_half" ? -1 : (which == "half" ? 0 : 1);
    return inst;
}

GeneratedInstance gen_thm3(std::int64_t p, std::int64_t q, std::int64_t c) {
    validate_ratio(p, q);
    // Duplicate X-values are allowed for the fresh rows since their Y is NULL,
    // so only the x + b original rows need distinct X-values.
    auto params = [&](std::int64_t k, std::int64_t& y, std::int64_t& b) {
        const std::int64_t d = k * (q - p);
        y = least_y(d, 0, k * q);
        if (y < 0) return false;
        b = d - y;
        return b >= 1 && y * (d - 1) <= k * q - 1;
    };
    std::int64_t y = 0, b = 0;
    c = pick_multiplier(c, [&](std::int64_t k) { return params(k, y, b); }, "thm3");
    params(c, y, b);
    const std::int64_t x = y + c * p;
    Cells rows;
    for (std::int64_t i = 1; i <= b; ++i) rows.push_back({"1", num(i), num(i)});
    for (std::int64_t j = 1; j <= x; ++j) rows.push_back({"", "", num(b + j)});
    GeneratedInstance inst;
    inst.table = IncompleteTable::from_strings({"X1", "X2", "Y"}, rows);
    inst.constraint = Constraint::fd(AttributeSet{0, 1}, AttributeSet{2});
    inst.provenance = {"thm3", {{"p", p}, {"q", q}, {"c", c}, {"y", y}, {"b", b}, {"x", x}}};
    set_measures(inst, x, y, x + b);
    return inst;
}

IncompleteTable graph_to_weak_similarity_table(const Graph& g) {
    if (g.n == 0) throw InvalidInput("graph needs at least one vertex");
    return IncompleteTable::from_strings(numbered("A", g.n), lemma_cells(g));
}

GeneratedInstance gen_lemma_graph(const Graph& g) {
    GeneratedInstance inst;
    inst.table = graph_to_weak_similarity_table(g);
    inst.constraint = Constraint::key(AttributeSet::all(g.n));
    inst.provenance = {"lemma-graph", {{"n", static_cast<std::int64_t>(g.n)}}};
    inst.expected["roundtrip"] = true;
    inst.graph = g;
    return inst;
}

GeneratedInstance reduce_maxclique_to_spcj_g3(const Graph& g, std::size_t k) {
    if (k < 1 || k > g.n) throw InvalidInput("maxclique: need 1 <= k <= n");
    GeneratedInstance inst = cj_reduction(g, "maxclique");
    const auto n = static_cast<std::int64_t>(g.n);
    inst.provenance.parameters["k"] = static_cast<std::int64_t>(k);
    inst.expected["threshold"] = Ratio(n - static_cast<std::int64_t>(k), n);
    inst.expected["answer"] = max_clique_size(g) >= k;
    inst.graph = g;
    return inst;
}

GeneratedInstance reduce_3color_to_spcj_g5(const Graph& g) {
    GeneratedInstance inst = cj_reduction(g.complement(), "threecolor");
    inst.expected["threshold"] = Ratio(2, 1);
    inst.expected["answer"] = is_k_colorable(g, 3);
    inst.graph = g;
    return inst;
}

Graph three_dm_gadget(const std::vector<Triple>& family, std::size_t q) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    const std::size_t base = 3 * q;
    for (std::size_t t = 0; t < family.size(); ++t) {
        const Triple& tr = family[t];
        if (tr.b >= q || tr.c >= q || tr.d >= q) throw InvalidInput("threedm: triple coordinate outside [0, q)");
        auto a = [&](std::size_t j) { return base + 9 * t + (j - 1); };
        const std::size_t b = tr.b, c = q + tr.c, d = 2 * q + tr.d;
        for (auto [u, v] : std::vector<std::pair<std::size_t, std::size_t>>{
                 {b, a(1)}, {b, a(2)}, {a(1), a(2)}, {c, a(4)}, {c, a(5)}, {a(4), a(5)},
                 {d, a(7)}, {d, a(8)}, {a(7), a(8)}, {a(3), a(6)}, {a(6), a(9)}, {a(3), a(9)},
                 {a(1), a(3)}, {a(2), a(3)}, {a(4), a(6)}, {a(5), a(6)}, {a(7), a(9)}, {a(8), a(9)}})
            e.emplace_back(u, v);
    }
    return Graph(base + 9 * family.size(), std::move(e));
}

GeneratedInstance reduce_3dm_to_spcj(const std::vector<Triple>& family, std::size_t q) {
    if (q == 0) throw InvalidInput("threedm: q must be positive");
    Graph g = three_dm_gadget(family, q);
    // Base vertices take the value of their coordinate set. An uncovered one
    // is isolated, so its single-row X-class misses two Y-values.
    std::vector<std::string> y(g.n);
    for (std::size_t i = 0; i < 3 * q; ++i) y[i] = num(static_cast<std::int64_t>(i / q + 1));
    static constexpr const char* kGadgetY[9] = {"2", "3", "1", "1", "3", "2", "1", "2", "3"};
    for (std::size_t t = 0; t < family.size(); ++t)
        for (std::size_t j = 0; j < 9; ++j) y[3 * q + 9 * t + j] = kGadgetY[j];

    Cells rows = lemma_cells(g);
    for (std::size_t i = 0; i < g.n; ++i) rows[i].push_back(y[i]);
    std::vector<std::string> names = numbered("A", g.n);
    names.push_back("Y");
    GeneratedInstance inst;
    inst.table = IncompleteTable::from_strings(names, rows);
    inst.constraint = Constraint::cj(AttributeSet::all(g.n), AttributeSet{g.n});
    inst.provenance = {"threedm",
                       {{"q", static_cast<std::int64_t>(q)}, {"triples", static_cast<std::int64_t>(family.size())}}};
    inst.expected["holds"] = has_perfect_3dm(family, q);
    inst.graph = g;
    return inst;
}

IncompleteTable random_table(std::size_t rows, std::size_t cols, std::size_t values, double null_rate,
                             std::uint64_t seed) {
    if (cols == 0 || values == 0) throw InvalidInput("random table needs columns and values");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(1, values);
    std::bernoulli_distribution is_null(null_rate);
    Cells cells(rows, std::vector<std::string>(cols));
    for (auto& r : cells)
        for (auto& cell : r) cell = is_null(rng) ? "" : std::to_string(pick(rng));
    return IncompleteTable::from_strings(numbered("A", cols), cells);
}

IncompleteTable corrupt_nulls(const IncompleteTable& t, double rate, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution is_null(rate);
    IncompleteTable out = t;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t a = 0; a < t.arity(); ++a)
            if (is_null(rng)) out.set(i, a, kNull);
    return out;
}

std::size_t max_clique_size(const Graph& g) {
    std::size_t best = 0;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
        best = std::max(best, cur.size());
        for (std::size_t v = from; v < g.n; ++v) {
            if (!std::all_of(cur.begin(), cur.end(), [&](std::size_t u) { return g.adjacent(u, v); })) continue;
            cur.push_back(v);
            grow(v + 1);
            cur.pop_back();
        }
    };
    grow(0);
    return best;
}

bool is_k_colorable(const Graph& g, std::size_t k) {
    std::vector<std::size_t> colour(g.n, 0);
    std::function<bool(std::size_t)> assign = [&](std::size_t v) {
        if (v == g.n) return true;
        for (std::size_t col = 1; col <= k; ++col) {
            bool clash = false;
            for (std::size_t u = 0; u < v && !clash; ++u) clash = colour[u] == col && g.adjacent(u, v);
            if (clash) continue;
            colour[v] = col;
            if (assign(v + 1)) return true;
        }
        colour[v] = 0;
        return false;
    };
    return assign(0);
}

bool has_perfect_3dm(const std::vector<Triple>& family, std::size_t q) {
    std::vector<bool> used_c(q, false), used_d(q, false);
    std::function<bool(std::size_t)> cover = [&](std::size_t b) {
        if (b == q) return true;
        for (const Triple& t : family) {
            if (t.b != b || used_c[t.c] || used_d[t.d]) continue;
            used_c[t.c] = used_d[t.d] = true;
            if (cover(b + 1)) return true;
            used_c[t.c] = used_d[t.d] = false;
        }
        return false;
    };
    return cover(0);
}

std::string expected_to_string(const ExpectedValue& v) {
    if (const Ratio* r = std::get_if<Ratio>(&v)) return r->str();
    return std::get<bool>(v) ? "true" : "false";
}

VerifyOutcome verify_instance(const GeneratedInstance& inst) {
    VerifyOutcome out;
    const IncompleteTable& t = inst.table;
    const Constraint& c = inst.constraint;
    const std::string& kind = inst.provenance.construction;

    auto record_measures = [&](const Ratio& g3, const std::optional<Ratio>& g5) {
        out.measured["g3"] = g3;
        if (g5) {
            out.measured["g5"] = *g5;
            out.measured["g3_minus_g5"] =
                g3.den == g5->den ? Ratio(g3.num - g5->num, g3.den) : g3 - *g5;
        }
    };
    if (kind == "prop3" || kind == "thm1") {
        RemovalResult r = g3_spkey(t, c.lhs);
        AdditionResult a = g5_spkey(t, c.lhs);
        record_measures(r.value, a.value);
    } else if (kind == "thm3") {
        RemovalResult r = g3_spfd(t, c.lhs, c.rhs);
        AdditionResult a = g5_spfd(t, c.lhs, c.rhs);
        record_measures(r.value, a.value);
    } else if (kind == "maxclique") {
        const Ratio threshold = std::get<Ratio>(inst.expected.at("threshold"));
        out.measured["threshold"] = threshold;
        out.measured["answer"] = g3_spcj(t, c.lhs, c.rhs).value <= threshold;
    } else if (kind == "threecolor") {
        const Ratio threshold = std::get<Ratio>(inst.expected.at("threshold"));
        out.measured["threshold"] = threshold;
        AdditionResult a = g5_spcj(t, c.lhs, c.rhs);
        out.measured["answer"] = a.value.has_value() && *a.value <= threshold;
    } else if (kind == "threedm") {
        out.measured["holds"] = check_spcj(t, c.lhs, c.rhs).holds;
    } else if (kind == "lemma-graph") {
        WeakSimilarityGraph w = weak_similarity_graph(t, AttributeSet::all(t.arity()));
        out.measured["roundtrip"] = inst.graph && w.vertices == inst.graph->n && w.edges == inst.graph->edges;
    }
    for (const auto& [name, want] : inst.expected) {
        auto it = out.measured.find(name);
        if (it == out.measured.end()) {
            out.mismatches.push_back(name + ": expected " + expected_to_string(want) + ", engine gave no value");
            continue;
        }
        bool same = want.index() == it->second.index() &&
                    (std::holds_alternative<bool>(want) ? std::get<bool>(want) == std::get<bool>(it->second)
                                                        : std::get<Ratio>(want) == std::get<Ratio>(it->second));
        if (!same)
            out.mismatches.push_back(name + ": expected " + expected_to_string(want) + ", engine gave " +
                                     expected_to_string(it->second));
    }
    out.ok = out.mismatches.empty();
    return out;
}

}  // namespace spc
