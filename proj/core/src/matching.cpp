#include "spc/matching.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "spc/errors.hpp"

namespace spc {

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

bool bfs_layers(const BipartiteGraph& g, const MatchingResult& m, std::vector<std::uint32_t>& dist) {
    std::vector<std::uint32_t> queue;
    queue.reserve(g.left_count());
    for (std::size_t u = 0; u < g.left_count(); ++u) {
        if (m.mate_left[u] == kUnmatched) {
            dist[u] = 0;
            queue.push_back(static_cast<std::uint32_t>(u));
        } else {
            dist[u] = kInf;
        }
    }
    bool found = false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint32_t u = queue[qi];
        for (std::uint32_t v : g.adj[u]) {
            std::int64_t w = m.mate_right[v];
            if (w == kUnmatched) {
                found = true;
            } else if (dist[w] == kInf) {
                dist[w] = dist[u] + 1;
                queue.push_back(static_cast<std::uint32_t>(w));
            }
        }
    }
    return found;
}

// Iterative layered DFS from a free left vertex; augments on success.
bool augment_from(const BipartiteGraph& g, MatchingResult& m, std::vector<std::uint32_t>& dist,
                  std::vector<std::size_t>& it, std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
        std::uint32_t x = stack.back();
        if (it[x] == g.adj[x].size()) {
            dist[x] = kInf;
            stack.pop_back();
            if (!stack.empty()) ++it[stack.back()];
            continue;
        }
        std::uint32_t v = g.adj[x][it[x]];
        std::int64_t w = m.mate_right[v];
        if (w == kUnmatched) {
            for (std::uint32_t u : stack) {
                std::uint32_t to = g.adj[u][it[u]];
                m.mate_left[u] = to;
                m.mate_right[to] = u;
            }
            return true;
        }
        if (dist[w] == dist[x] + 1)
            stack.push_back(static_cast<std::uint32_t>(w));
        else
            ++it[x];
    }
    return false;
}

}  // namespace

namespace {

void augment_all(const BipartiteGraph& g, MatchingResult& m) {
    std::vector<std::uint32_t> dist(g.left_count());
    std::vector<std::size_t> it(g.left_count());
    while (bfs_layers(g, m, dist)) {
        std::fill(it.begin(), it.end(), 0);
        for (std::size_t u = 0; u < g.left_count(); ++u)
            if (m.mate_left[u] == kUnmatched && augment_from(g, m, dist, it, static_cast<std::uint32_t>(u))) ++m.size;
    }
}

MatchingResult empty_matching(const BipartiteGraph& g) {
    MatchingResult m;
    m.mate_left.assign(g.left_count(), kUnmatched);
    m.mate_right.assign(g.right_count, kUnmatched);
    return m;
}

}  // namespace

MatchingResult hopcroft_karp(const BipartiteGraph& g) {
    MatchingResult m = empty_matching(g);
    augment_all(g, m);
    return m;
}

MatchingResult hopcroft_karp_prioritized(const BipartiteGraph& g, const std::vector<std::size_t>& priority) {
    std::vector<std::size_t> levels(priority.begin(), priority.end());
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    BipartiteGraph phase;
    phase.right_count = g.right_count;
    phase.adj.assign(g.left_count(), {});
    MatchingResult m = empty_matching(g);
    for (std::size_t level : levels) {
        for (std::size_t u = 0; u < g.left_count(); ++u)
            if (priority[u] == level) phase.adj[u] = g.adj[u];
        augment_all(phase, m);
    }
    return m;
}

bool is_maximum(const BipartiteGraph& g, const MatchingResult& m) {
    // Alternating BFS from every free left vertex must not reach a free right vertex.
    std::vector<bool> seen_left(g.left_count(), false), seen_right(g.right_count, false);
    std::vector<std::size_t> queue;
    for (std::size_t u = 0; u < g.left_count(); ++u)
        if (m.mate_left[u] == kUnmatched) {
            seen_left[u] = true;
            queue.push_back(u);
        }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (std::uint32_t v : g.adj[queue[qi]]) {
            if (seen_right[v]) continue;
            seen_right[v] = true;
            std::int64_t w = m.mate_right[v];
            if (w == kUnmatched) return false;
            if (!seen_left[w]) {
                seen_left[w] = true;
                queue.push_back(static_cast<std::size_t>(w));
            }
        }
    }
    return true;
}

ExtensionGraph build_extension_graph(const IncompleteTable& t, const AttributeSet& k, std::size_t cap) {
    ExtensionGraph g;
    g.key = k;
    g.cap = cap;
    g.domains = active_domains(t);
    const std::size_t n = t.rows();
    g.graph.adj.assign(n, {});
    g.is_high.assign(n, false);

    // Mixed-radix codes when the K-space fits in 64 bits, else ordered map.
    std::vector<std::unordered_map<ValueId, std::uint64_t>> index(k.size());
    std::vector<std::uint64_t> weight(k.size());
    bool packed = true;
    {
        std::uint64_t w = 1;
        for (std::size_t j = k.size(); j-- > 0;) {
            const auto& dom = g.domains[k[j]].values;
            for (std::size_t d = 0; d < dom.size(); ++d) index[j][dom[d]] = d;
            weight[j] = w;
            if (w > std::numeric_limits<std::uint64_t>::max() / dom.size()) {
                packed = false;
                break;
            }
            w *= dom.size();
        }
    }
    std::unordered_map<std::uint64_t, std::uint32_t> code_to_right;
    std::map<Row, std::uint32_t> row_to_right;

    auto right_id = [&](const Row& ext) -> std::uint32_t {
        if (packed) {
            std::uint64_t code = 0;
            for (std::size_t j = 0; j < ext.size(); ++j) code += index[j][ext[j]] * weight[j];
            auto [it, inserted] = code_to_right.try_emplace(code, static_cast<std::uint32_t>(g.right.size()));
            if (inserted) g.right.push_back(ext);
            return it->second;
        }
        auto [it, inserted] = row_to_right.try_emplace(ext, static_cast<std::uint32_t>(g.right.size()));
        if (inserted) g.right.push_back(ext);
        return it->second;
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (extension_count(t, i, k, g.domains, cap) >= cap) {
            g.is_high[i] = true;
            g.high_degree_left.push_back(i);
            continue;
        }
        auto& adj = g.graph.adj[i];
        for_each_extension(t, i, k, g.domains, [&](const Row& ext) {
            adj.push_back(right_id(ext));
            return true;
        });
    }
    g.graph.right_count = g.right.size();
    return g;
}

ExtensionMatching max_matching(const IncompleteTable& t, const ExtensionGraph& g) {
    return max_matching(t, g, hopcroft_karp(g.graph));
}

ExtensionMatching max_matching(const IncompleteTable& t, const ExtensionGraph& g, MatchingResult m) {
    ExtensionMatching em;
    em.matching = std::move(m);
    em.size = em.matching.size;
    em.extension.assign(t.rows(), {});
    std::set<Row> used;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        std::int64_t r = em.matching.mate_left[i];
        if (r == kUnmatched) continue;
        em.extension[i] = g.right[r];
        used.insert(g.right[r]);
    }
    for (std::size_t i : g.high_degree_left) {
        for_each_extension(t, i, g.key, g.domains, [&](const Row& ext) {
            if (used.count(ext)) return true;
            used.insert(ext);
            em.extension[i] = ext;
            return false;
        });
        ++em.size;
    }
    return em;
}

ComponentPartition hall_components(const ExtensionGraph& g, const MatchingResult& m) {
    if (!g.high_degree_left.empty())
        throw UnmaterializedGraph("extension graph has " + std::to_string(g.high_degree_left.size()) +
                                  " capped tuples; raise the cap to classify components");
    const std::size_t nl = g.graph.left_count(), nr = g.graph.right_count;
    std::vector<std::size_t> parent(nl + nr);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t u = 0; u < nl; ++u)
        for (std::uint32_t v : g.graph.adj[u]) {
            std::size_t a = find(u), b = find(nl + v);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<std::size_t, Component> by_root;
    for (std::size_t u = 0; u < nl; ++u) {
        auto& c = by_root[find(u)];
        c.left.push_back(u);
        if (m.mate_left[u] != kUnmatched) ++c.nu;
    }
    for (std::size_t v = 0; v < nr; ++v) by_root[find(nl + v)].right.push_back(v);
    ComponentPartition part;
    for (auto& [root, c] : by_root) {
        c.satisfied = c.nu == c.left.size();
        (c.satisfied ? part.satisfied : part.deficient).push_back(std::move(c));
    }
    return part;
}

}  // namespace spc
