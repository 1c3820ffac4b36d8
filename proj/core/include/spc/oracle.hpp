#pragma once

#include <cstdint>
#include <optional>

#include "spc/constraint.hpp"
#include "spc/table.hpp"

namespace spc {

inline constexpr std::uint64_t kDefaultWorldBudget = 10'000'000;

struct OracleOptions {
    std::uint64_t world_budget = kDefaultWorldBudget;  // per enumeration
};

// Number of spWorlds of t, saturating at limit.
std::uint64_t count_spworlds(const IncompleteTable& t, std::uint64_t limit = UINT64_MAX);

// Odometer over the NULL cells of a table. Each call to next() moves to the
// following world; the first call yields the first world.
class SpWorldEnumerator {
public:
    explicit SpWorldEnumerator(const IncompleteTable& t, std::uint64_t budget = kDefaultWorldBudget);

    std::uint64_t total() const { return total_; }
    bool next();
    const IncompleteTable& world() const { return world_; }
    SpWorld spworld() const;

private:
    IncompleteTable world_;
    std::vector<std::pair<std::size_t, std::size_t>> cells_;  // (row, attribute)
    std::vector<const ActiveDomain*> cell_domain_;
    std::vector<ActiveDomain> domains_;
    std::vector<std::size_t> digit_;
    std::uint64_t total_ = 0;
    bool started_ = false;
    bool done_ = false;
};

// Classical satisfaction on a complete table.
bool holds_key(const IncompleteTable& w, const AttributeSet& k);
bool holds_fd(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y);
bool holds_mvd(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y);
bool holds_cj(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y);
bool holds(const IncompleteTable& w, const Constraint& c);

// Exhaustive spWorld search. Nmvd is evaluated directly on the table.
Verdict oracle_check(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt = {});

// Size-ordered, lexicographic subset search.
RemovalResult oracle_g3(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt = {});

// Minimum over the candidate pool: replicated fresh rows for keys, X-fresh
// rows for FDs, X-fresh plus all-NULL rows for MVDs, all-NULL rows for CJs.
AdditionResult oracle_g5(const IncompleteTable& t, const Constraint& c, const OracleOptions& opt = {});

// Smallest k <= max_rows such that some bag of k arbitrary tuples, each cell
// drawn from the active domain, up to fresh_per_column new values, or NULL,
// makes the constraint hold. Empty when none exists within max_rows.
std::optional<std::size_t> oracle_g5_exhaustive(const IncompleteTable& t, const Constraint& c,
                                                std::size_t max_rows = 2, std::size_t fresh_per_column = 2,
                                                const OracleOptions& opt = {});

// Sum over X-classes of |Ys|*|Zs| - |pairs| on a complete table.
std::size_t mvd_missing(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y);
// |PX|*|PY| - |P| on a complete table, or empty when X and Y overlap on a
// column that takes two values (such pairs can never be realized).
std::optional<std::size_t> cj_missing(const IncompleteTable& w, const AttributeSet& x, const AttributeSet& y);

}  // namespace spc
