#include "spc/constraint.hpp"

#include "spc/errors.hpp"

namespace spc {

std::string kind_name(ConstraintKind k) {
    switch (k) {
    case ConstraintKind::SpKey: return "spkey";
    case ConstraintKind::SpFd: return "spfd";
    case ConstraintKind::SpMvd: return "spmvd";
    case ConstraintKind::SpCj: return "spcj";
    case ConstraintKind::Nmvd: return "nmvd";
    }
    return "?";
}

namespace {

std::string join_names(const AttributeSet& s, const Schema& schema) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s[i] < schema.size() ? schema.name(s[i]) : "#" + std::to_string(s[i]);
    }
    return out;
}

}  // namespace

std::string to_string(const Constraint& c, const Schema& schema) {
    std::string s = kind_name(c.kind) + "(" + join_names(c.lhs, schema);
    switch (c.kind) {
    case ConstraintKind::SpKey: break;
    case ConstraintKind::SpFd: s += " -> " + join_names(c.rhs, schema); break;
    case ConstraintKind::SpMvd:
    case ConstraintKind::Nmvd: s += " ->> " + join_names(c.rhs, schema); break;
    case ConstraintKind::SpCj: s += " x " + join_names(c.rhs, schema); break;
    }
    return s + ")";
}

void validate(const Constraint& c, const Schema& schema) {
    for (std::size_t a : c.lhs)
        if (a >= schema.size()) throw InvalidInput("attribute position out of range");
    for (std::size_t a : c.rhs)
        if (a >= schema.size()) throw InvalidInput("attribute position out of range");
    switch (c.kind) {
    case ConstraintKind::SpKey:
        if (c.lhs.empty()) throw InvalidInput("spkey needs at least one attribute");
        break;
    case ConstraintKind::SpCj:
        if (c.lhs.empty() || c.rhs.empty()) throw InvalidInput("spcj needs non-empty sides");
        break;
    default:
        if (c.rhs.empty()) throw InvalidInput(kind_name(c.kind) + " needs a non-empty right-hand side");
        break;
    }
}

}  // namespace spc
