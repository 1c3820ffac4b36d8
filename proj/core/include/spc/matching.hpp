#pragma once

#include <cstdint>
#include <vector>

#include "spc/table.hpp"

namespace spc {

inline constexpr std::int64_t kUnmatched = -1;

struct BipartiteGraph {
    std::size_t right_count = 0;
    std::vector<std::vector<std::uint32_t>> adj;  // left -> right

    std::size_t left_count() const { return adj.size(); }
};

struct MatchingResult {
    std::vector<std::int64_t> mate_left;   // right index or kUnmatched
    std::vector<std::int64_t> mate_right;  // left index or kUnmatched
    std::size_t size = 0;
};

// Layered shortest-augmenting-path matching. Left vertices are processed in
// index order and adjacency in list order, so results are reproducible.
MatchingResult hopcroft_karp(const BipartiteGraph& g);

// Maximum matching whose matched left set is lexicographically best by
// priority: left vertices of higher priority are matched in earlier phases
// and augmenting paths never unmatch them. The matched set is a maximum
// weight base of the transversal matroid.
MatchingResult hopcroft_karp_prioritized(const BipartiteGraph& g, const std::vector<std::size_t>& priority);

// True when no augmenting path exists for m in g.
bool is_maximum(const BipartiteGraph& g, const MatchingResult& m);

// Tuples on the left, distinct complete K-extensions over the active domains
// on the right. Tuples with at least cap extensions are not materialized.
struct ExtensionGraph {
    AttributeSet key;
    std::vector<ActiveDomain> domains;  // indexed by column
    std::size_t cap = 0;
    std::vector<Row> right;             // K-projection of each right vertex
    BipartiteGraph graph;
    std::vector<std::size_t> high_degree_left;
    std::vector<bool> is_high;
};

ExtensionGraph build_extension_graph(const IncompleteTable& t, const AttributeSet& k, std::size_t cap);

struct ExtensionMatching {
    MatchingResult matching;             // over materialized vertices
    std::vector<Row> extension;          // per left: assigned K-extension, empty if unmatched
    std::size_t size = 0;                // both phases
};

// Maximum matching, then every high-degree tuple receives an unused
// extension (always possible since fewer than cap are occupied).
ExtensionMatching max_matching(const IncompleteTable& t, const ExtensionGraph& g);
// Same, completing a matching already computed over the materialized part.
ExtensionMatching max_matching(const IncompleteTable& t, const ExtensionGraph& g, MatchingResult m);

struct Component {
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    std::size_t nu = 0;
    bool satisfied = false;
};

struct ComponentPartition {
    std::vector<Component> satisfied;
    std::vector<Component> deficient;
};

// Connected components classified by whether the matching covers every tuple.
// Throws UnmaterializedGraph when g has high-degree tuples.
ComponentPartition hall_components(const ExtensionGraph& g, const MatchingResult& m);

}  // namespace spc
