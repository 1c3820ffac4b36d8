#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spc {

// Malformed input: bad schema, out-of-range attribute, ragged CSV, parse error.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A search or enumeration hit its configured cap. Never a silent truncation.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t reached)
        : std::runtime_error(what + " (budget exhausted after " + std::to_string(reached) + ")"), reached_(reached) {}
    std::uint64_t reached() const { return reached_; }

private:
    std::uint64_t reached_;
};

// The total part of the table already violates the constraint.
class PreconditionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// hall_components on a graph with capped (unmaterialized) left vertices.
class UnmaterializedGraph : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spc
