#pragma once

#include <optional>

#include "spc/constraint.hpp"
#include "spc/matching.hpp"

namespace spc {

struct KeyOptions {
    std::size_t cap = 0;             // extension cap per tuple; 0 means |T| + 1
    std::size_t g4_cap = 1u << 16;   // g4 needs the graph fully materialized
    std::size_t witness_rounds = 8;  // promotion rounds for the g3 witness
    std::size_t witness_swaps = 4096;  // swap evaluations for the g3 witness
    std::size_t witness_search_rows = 16;  // exhaustive witness search up to this size
};

struct KeyMeasureReport {
    AttributeSet key;
    bool holds = false;
    Ratio g3;
    std::optional<Ratio> g4;
    std::optional<Ratio> g5;  // empty when unreachable or precondition fails
    bool precondition = true;
    std::vector<std::size_t> removal_witness;
    std::vector<Row> addition_witness;
    std::optional<SpWorld> spworld_witness;
};

Verdict check_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt = {});

// (|T| - nu) / |T|. The witness is the set left unmatched by a matching that
// favours the most complete tuples; its remaining rows are re-certified and
// the world is omitted only if no certified set was found.
RemovalResult g3_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt = {});

// Component-weighted variant over the fully materialized extension graph.
Ratio g4_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt = {});

// Fewest replicated fresh rows (z,...,z) that make the key hold. Throws
// PreconditionViolated when the K-total part already repeats a key value;
// unreachable when |K| = 1 and the key fails.
AdditionResult g5_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt = {});

KeyMeasureReport measure_spkey(const IncompleteTable& t, const AttributeSet& k, const KeyOptions& opt = {});

}  // namespace spc
