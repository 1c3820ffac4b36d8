#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spc/rational.hpp"
#include "spc/table.hpp"

namespace spc {

enum class ConstraintKind { SpKey, SpFd, SpMvd, SpCj, Nmvd };

// SpKey uses lhs only. The other kinds read lhs as X and rhs as Y.
struct Constraint {
    ConstraintKind kind = ConstraintKind::SpKey;
    AttributeSet lhs;
    AttributeSet rhs;

    static Constraint key(AttributeSet k) { return {ConstraintKind::SpKey, std::move(k), {}}; }
    static Constraint fd(AttributeSet x, AttributeSet y) { return {ConstraintKind::SpFd, std::move(x), std::move(y)}; }
    static Constraint mvd(AttributeSet x, AttributeSet y) { return {ConstraintKind::SpMvd, std::move(x), std::move(y)}; }
    static Constraint cj(AttributeSet x, AttributeSet y) { return {ConstraintKind::SpCj, std::move(x), std::move(y)}; }
    static Constraint nmvd(AttributeSet x, AttributeSet y) { return {ConstraintKind::Nmvd, std::move(x), std::move(y)}; }

    bool operator==(const Constraint&) const = default;
};

std::string kind_name(ConstraintKind k);
// Textual form in the CLI grammar, e.g. "spfd(X1,X2 -> Y)".
std::string to_string(const Constraint& c, const Schema& schema);
// Throws InvalidInput when a position is outside the schema or a side is empty.
void validate(const Constraint& c, const Schema& schema);

// A complete table plus, per row, the source row index or kSynthetic.
struct SpWorld {
    static constexpr std::size_t kSynthetic = static_cast<std::size_t>(-1);
    IncompleteTable table;
    std::vector<std::size_t> origin;
};

struct Verdict {
    bool holds = false;
    std::optional<SpWorld> world;          // certifying world when holds
    std::vector<std::size_t> violation;    // offending row indices when known
};

// Minimum removal: ratio is removed.size() over the table size.
struct RemovalResult {
    Ratio value;
    std::vector<std::size_t> removed;
    std::optional<SpWorld> world;  // world of the remaining rows
    bool precondition = true;      // total part satisfies the constraint
};

// Minimum addition over the candidate pool; value is empty when no number of
// pool rows can repair the table.
struct AdditionResult {
    std::optional<Ratio> value;
    std::vector<Row> added;
    std::optional<SpWorld> world;  // world of the table plus added rows
    bool precondition = true;
};

}  // namespace spc
