#pragma once

#include <random>
#include <string>
#include <vector>

#include "spc/constraint.hpp"
#include "spc/oracle.hpp"
#include "spc/table.hpp"

namespace spc::testing {

// "_" marks a NULL cell in test tables.
inline constexpr const char* kN = "_";

inline IncompleteTable tbl(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& rows) {
    return IncompleteTable::from_strings(names, rows, kN);
}

inline IncompleteTable table4() { return tbl({"X1", "X2"}, {{"_", "1"}, {"2", "_"}, {"2", "_"}, {"2", "2"}}); }

inline IncompleteTable spfd_six() {
    return tbl({"X1", "X2", "Y"},
               {{"_", "1", "1"}, {"2", "_", "1"}, {"2", "_", "1"}, {"2", "1", "2"}, {"2", "1", "2"}, {"2", "2", "2"}});
}

inline IncompleteTable total_removal() {
    return tbl({"X1", "X2", "Y"}, {{"1", "_", "1"}, {"1", "_", "1"}, {"1", "1", "2"}, {"1", "1", "_"}, {"1", "2", "3"}});
}

inline IncompleteTable cars() {
    return tbl({"Car_Model", "Door_No", "Engine_Type"},
               {{"BMW", "4", "_"}, {"BMW", "_", "electric"}, {"Ford", "_", "V8"}, {"Ford", "_", "V6"}});
}

inline IncompleteTable teaching() {
    return tbl({"Semester", "TeacherID", "CourseID"},
               {{"First", "1", "1"}, {"_", "1", "2"}, {"First", "2", "3"}, {"_", "2", "4"}, {"First", "3", "5"},
                {"_", "3", "6"}});
}

inline IncompleteTable course() {
    return tbl({"Course Name", "Year", "Lecturer", "Credits", "Semester"},
               {{"Mathematics", "2019", "_", "5", "1"}, {"Datamining", "2018", "Sarah", "7", "_"},
                {"_", "2019", "Sarah", "_", "2"}});
}

inline IncompleteTable mvd_greater() {
    return tbl({"X1", "X2", "X3", "X4", "Y", "Z"}, {{"_", "1", "1", "1", "1", "1"},
                                                    {"1", "_", "1", "1", "1", "1"},
                                                    {"1", "1", "_", "1", "2", "2"},
                                                    {"1", "1", "1", "_", "2", "3"}});
}

inline IncompleteTable mvd_less() {
    return tbl({"X", "Y", "Z1", "Z2"}, {{"1", "1", "1", "1"}, {"1", "1", "2", "1"}, {"2", "1", "1", "1"}, {"2", "2", "2", "_"}});
}

inline IncompleteTable mvd_equal() { return tbl({"X", "Y", "Z"}, {{"1", "1", "1"}, {"1", "1", "2"}, {"1", "2", "_"}}); }

inline IncompleteTable cj_five() {
    return tbl({"TeacherID", "CourseID"}, {{"1", "1"}, {"1", "2"}, {"1", "3"}, {"2", "_"}, {"2", "_"}});
}

inline IncompleteTable cj_four() { return tbl({"TeacherID", "CourseID"}, {{"1", "1"}, {"1", "2"}, {"1", "3"}, {"2", "_"}}); }

inline IncompleteTable fig1_a() { return tbl({"X", "Y", "Z"}, {{"1", "1", "1"}, {"1", "1", "2"}, {"1", "1", "_"}}); }

inline IncompleteTable fig1_b() {
    return tbl({"X", "Y", "Z", "V"}, {{"2", "1", "1", "1"}, {"2", "2", "1", "2"}, {"2", "2", "1", "1"}, {"2", "1", "1", "_"}});
}

inline IncompleteTable fig1_c() { return tbl({"X", "Y", "Z"}, {{"1", "1", "1"}, {"2", "2", "2"}, {"_", "3", "3"}}); }

// Uniform random table over values 1..values; NULL with probability null_rate.
inline IncompleteTable random_small(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t values,
                                    double null_rate) {
    std::uniform_int_distribution<std::size_t> pick(1, values);
    std::bernoulli_distribution is_null(null_rate);
    std::vector<std::string> names;
    for (std::size_t a = 0; a < cols; ++a) names.push_back("A" + std::to_string(a + 1));
    std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
    for (auto& r : cells)
        for (auto& c : r) c = is_null(rng) ? kN : std::to_string(pick(rng));
    return tbl(names, cells);
}

// Every non-empty attribute subset of an arity, as sets of positions.
inline std::vector<AttributeSet> nonempty_subsets(std::size_t arity) {
    std::vector<AttributeSet> out;
    for (std::size_t mask = 1; mask < (1u << arity); ++mask) {
        std::vector<std::size_t> pos;
        for (std::size_t a = 0; a < arity; ++a)
            if (mask >> a & 1u) pos.push_back(a);
        out.emplace_back(pos);
    }
    return out;
}

// True when world is a complete instance of src row by row: non-NULL cells
// are kept and NULL cells take values from src's active domain.
inline bool is_world_of(const IncompleteTable& src, const IncompleteTable& world) {
    if (src.rows() != world.rows() || src.arity() != world.arity()) return false;
    auto domains = active_domains(src);
    for (std::size_t i = 0; i < src.rows(); ++i)
        for (std::size_t a = 0; a < src.arity(); ++a) {
            ValueId v = src.at(i, a), w = world.at(i, a);
            if (w == kNull) return false;
            if (v != kNull ? v != w : !domains[a].contains(w)) return false;
        }
    return true;
}

inline bool removal_witness_valid(const IncompleteTable& t, const Constraint& c, const RemovalResult& r) {
    if (!r.world) return false;
    IncompleteTable rest = t.without(r.removed);
    return is_world_of(rest, r.world->table) && holds(r.world->table, c);
}

inline bool addition_witness_valid(const IncompleteTable& t, const Constraint& c, const AdditionResult& a) {
    if (!a.world) return false;
    IncompleteTable ext = t.with_rows(a.added);
    return is_world_of(ext, a.world->table) && holds(a.world->table, c);
}

// Every column has a non-NULL value.
inline bool nondegenerate(const IncompleteTable& t) {
    for (std::size_t a = 0; a < t.arity(); ++a) {
        bool any = false;
        for (std::size_t i = 0; i < t.rows() && !any; ++i) any = t.at(i, a) != kNull;
        if (!any) return false;
    }
    return true;
}

}  // namespace spc::testing
