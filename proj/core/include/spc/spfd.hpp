#pragma once

#include <cstdint>
#include <optional>

#include "spc/constraint.hpp"

namespace spc {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

struct FdOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;  // per search
};

// X -> Y normalized to X -> Y\X.
struct FdInstance {
    AttributeSet lhs;
    AttributeSet rhs;

    static FdInstance normalize(const AttributeSet& x, const AttributeSet& y) { return {x, y - x}; }
};

struct FdMeasureReport {
    bool holds = false;
    Ratio g3;
    std::optional<Ratio> g5;
    bool precondition = true;
    std::vector<std::size_t> removal_witness;
    std::vector<Row> addition_witness;
    std::optional<SpWorld> spworld_witness;
};

// Exact backtracking over X-extensions: tuples sharing an X-value must agree
// on the non-NULL cells of Y\X. Throws BudgetExceeded past the node budget.
Verdict check_spfd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y, const FdOptions& opt = {});

// Minimum removal by branch and bound over every row, total rows included.
// The result carries precondition = false when the X-total part violates the FD.
RemovalResult g3_spfd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y, const FdOptions& opt = {});

// Fewest X-fresh rows (one new value on X, NULL elsewhere) that make the FD
// hold; empty when the X-total part already violates it.
AdditionResult g5_spfd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y, const FdOptions& opt = {});

FdMeasureReport measure_spfd(const IncompleteTable& t, const AttributeSet& x, const AttributeSet& y,
                             const FdOptions& opt = {});

}  // namespace spc
