#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spc/constraint.hpp"

namespace spc {

// Simple undirected graph on vertices 0..n-1.
struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, no duplicates

    Graph() = default;
    Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edge_list);

    bool adjacent(std::size_t i, std::size_t j) const;
    Graph complement() const;

    static Graph complete(std::size_t n);
    static Graph path(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph empty(std::size_t n);
    // Graph on n vertices whose edge e (in lexicographic pair order) is
    // present when bit e of mask is set.
    static Graph from_mask(std::size_t n, std::uint64_t mask);
};

// One triple (b, c, d) with each coordinate in [0, q).
struct Triple {
    std::size_t b = 0;
    std::size_t c = 0;
    std::size_t d = 0;
};

using ExpectedValue = std::variant<Ratio, bool>;

struct Provenance {
    std::string construction;
    std::map<std::string, std::int64_t> parameters;  // includes the multiplier c actually used
};

struct GeneratedInstance {
    IncompleteTable table;
    Constraint constraint;
    std::map<std::string, ExpectedValue> expected;
    Provenance provenance;
    std::optional<Graph> graph;  // source graph of graph-based instances
};

// Multiplier c = 0 picks the smallest c for which the construction is valid.
// Throws InvalidInput unless 0 <= p < q, or when an explicit c is invalid.

// Key over all p'+2 columns (p' = cp, q' = cq): q'-p'-1 total rows
// (1,...,1,i) and p'+1 rows with one NULL on the diagonal of the first p'+1
// columns. g3 = (p'+1)/q', g5 = 1/q'.
GeneratedInstance gen_prop3(std::int64_t p, std::int64_t q, std::int64_t c = 0);

// Two-column key whose g3 - g5 = p/q, by the case of p/q against 1/2.
GeneratedInstance gen_thm1(std::int64_t p, std::int64_t q, std::int64_t c = 0);

// spFD X1,X2 -> Y with b total rows (1,i,i) and x rows (NULL,NULL,b+j).
GeneratedInstance gen_thm3(std::int64_t p, std::int64_t q, std::int64_t c = 0);

// k x k table over A1..Ak: cell (row i, column l) is 1 when l = i, NULL when
// {v_i, v_l} is an edge and 2 otherwise. Its weak similarity graph is G.
IncompleteTable graph_to_weak_similarity_table(const Graph& g);

// The table above as an instance (constraint: key over all columns) whose
// expected "roundtrip" says the weak similarity graph reproduces G.
GeneratedInstance gen_lemma_graph(const Graph& g);

// Schema {X, A1..An}, t_i[X] = i, the A-part from G. The question is
// g3(X x A1..An) <= 1 - k/n; expected "answer" is whether G has a k-clique.
GeneratedInstance reduce_maxclique_to_spcj_g3(const Graph& g, std::size_t k);

// Same shape with the A-part built from the complement of G. The question is
// g5 <= 2; expected "answer" is whether G is 3-colourable.
GeneratedInstance reduce_3color_to_spcj_g5(const Graph& g);

// Partition-into-triangles gadget over A1..A|V| plus a Y column holding the
// values 1, 2, 3. The spCJ holds iff the family has a perfect matching.
GeneratedInstance reduce_3dm_to_spcj(const std::vector<Triple>& family, std::size_t q);

// The gadget graph: vertices b_0..b_{q-1}, c_*, d_*, then nine per triple.
Graph three_dm_gadget(const std::vector<Triple>& family, std::size_t q);

// Uniform random table over the values 1..values with NULL probability
// null_rate, seeded deterministically.
IncompleteTable random_table(std::size_t rows, std::size_t cols, std::size_t values, double null_rate,
                             std::uint64_t seed);

// Replaces each cell by NULL with probability rate.
IncompleteTable corrupt_nulls(const IncompleteTable& t, double rate, std::uint64_t seed);

// Brute-force reference answers.
std::size_t max_clique_size(const Graph& g);
bool is_k_colorable(const Graph& g, std::size_t k);
bool has_perfect_3dm(const std::vector<Triple>& family, std::size_t q);

struct VerifyOutcome {
    bool ok = true;
    std::map<std::string, ExpectedValue> measured;
    std::vector<std::string> mismatches;
};

// Recomputes every expected value with the engines.
VerifyOutcome verify_instance(const GeneratedInstance& inst);

std::string expected_to_string(const ExpectedValue& v);

}  // namespace spc
