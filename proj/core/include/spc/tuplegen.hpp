#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "spc/constraint.hpp"

namespace spc {

struct TupleGenOptions {
    std::uint64_t node_budget = 10'000'000;  // per search
};

// X x Y; singular when both sides are single, distinct attributes.
struct CjInstance {
    AttributeSet lhs;
    AttributeSet rhs;

    bool singular() const { return lhs.size() == 1 && rhs.size() == 1 && lhs != rhs; }
};

// Tuples as vertices, an edge for every pair weakly similar on the attributes.
struct WeakSimilarityGraph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
};

WeakSimilarityGraph weak_similarity_graph(const IncompleteTable& t, const AttributeSet& x);

// Exact search over X-extensions of X-incomplete tuples; inside every
// X-class the MVD is a cross join of Y\X and the remaining attributes.
Verdict check_spmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                    const TupleGenOptions& opt = {});

// Lien's condition on the table itself: for distinct X-total tuples t1, t2
// with t1[X] = t2[X] some tuple agrees (non-NULL) with t1 on XY and with t2
// on X and the remaining attributes.
bool check_nmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y);

// Matching of tuples onto VD_A x VD_B covering every pair.
Verdict check_spcj_singular(const IncompleteTable& t, std::size_t a, std::size_t b);

// Branch and bound over X- and Y-classes of tuples.
Verdict check_spcj_general(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                           const TupleGenOptions& opt = {});

// Singular instances take the matching path, the rest the general search.
Verdict check_spcj(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                   const TupleGenOptions& opt = {});

// Size-ordered subset search; the witness is the lexicographically first
// minimum removal set.
RemovalResult g3_spmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                       const TupleGenOptions& opt = {});
RemovalResult g3_spcj(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                      const TupleGenOptions& opt = {});

// spMVD: b X-fresh rows plus one all-NULL row per pair still missing,
// minimized over b. spCJ: one all-NULL row per missing pair of the best
// world; empty when every world repeats two values on an X and Y overlap.
AdditionResult g5_spmvd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                        const TupleGenOptions& opt = {});
AdditionResult g5_spcj(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                       const TupleGenOptions& opt = {});

// Smallest number of missing cross-join pairs over all spWorlds, with
// all-NULL tuples realizing missing pairs; empty when X and Y share an
// attribute with two distinct values.
std::optional<std::size_t> cj_min_missing(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                                          const TupleGenOptions& opt = {});

}  // namespace spc
