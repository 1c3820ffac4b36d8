#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spc/constraint.hpp"

namespace spc {

// Textual constraint in the grammar kind "(" attrs [ sep attrs ] ")" where
// kind is spkey | spfd | spmvd | spcj | nmvd and sep is "->" (spfd), "->>"
// (spmvd, nmvd) or "x" (spcj). Whitespace is insignificant.
struct ConstraintSpec {
    std::string text;
    Constraint constraint;
};

// Throws InvalidInput on an unknown kind, unknown attribute, empty side or
// a separator that does not fit the kind.
Constraint parse_constraint(std::string_view s, const Schema& schema);

struct OracleLimits {
    std::size_t max_rows = 8;
    std::size_t max_columns = 4;
    std::uint64_t max_worlds = 1'000'000;
};

struct RunOptions {
    bool check_only = false;  // verdicts without measures
    bool g3 = true;
    bool g4 = false;  // spkey only
    bool g5 = true;
    std::uint64_t budget = 10'000'000;  // node budget per search
    bool verify_with_oracle = false;
    OracleLimits oracle;
    bool timing = false;
};

enum class RunStatus { Holds, Violated, BudgetExceeded, Error };

struct OracleAgreement {
    bool performed = false;
    bool agrees = true;
    std::string note;  // why it was skipped, or what disagreed
};

struct ConstraintReport {
    ConstraintSpec spec;
    RunStatus status = RunStatus::Error;
    std::optional<bool> holds;
    std::optional<Ratio> g3, g4, g5;
    bool g5_unreachable = false;
    bool precondition = true;
    std::vector<std::size_t> removal_witness;
    std::vector<Row> addition_witness;
    std::optional<SpWorld> spworld;          // certifying world when the constraint holds
    std::optional<SpWorld> removal_world;    // world of the rows kept by g3
    std::optional<SpWorld> addition_world;   // world of the table plus g5 rows
    std::optional<std::uint64_t> budget_reached;
    std::string error;
    std::vector<std::string> notes;
    OracleAgreement oracle;
    double seconds = 0;
};

struct RunReport {
    std::vector<ConstraintReport> constraints;
};

// Rejects g4 on anything but spkey with InvalidInput before running.
// Constraints run concurrently; the report keeps the input order.
RunReport run(const IncompleteTable& t, const std::vector<ConstraintSpec>& specs, const RunOptions& opt = {});

// 0 when every constraint holds, 3 when any search ran out of budget,
// 1 otherwise (some violated or failed).
int exit_code(const RunReport& r);

std::string status_name(RunStatus s);

// Stable field order; timing fields only when opt.timing.
std::string to_json(const RunReport& r, const IncompleteTable& t, const RunOptions& opt, int indent = 2);
std::string to_text(const RunReport& r, const RunOptions& opt);

}  // namespace spc
