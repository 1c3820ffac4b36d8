#include "spc/report.hpp"

#include <chrono>
#include <future>
#include <sstream>

#include <json.hpp>

#include "spc/errors.hpp"
#include "spc/oracle.hpp"
#include "spc/spfd.hpp"
#include "spc/spkey.hpp"
#include "spc/tuplegen.hpp"

namespace spc {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

std::size_t resolve(const std::string& name, const Schema& schema) {
    if (name.empty()) throw InvalidInput("empty attribute name");
    auto pos = schema.index_of(name);
    if (!pos) throw InvalidInput("unknown attribute '" + name + "'");
    return *pos;
}

AttributeSet resolve_list(std::string_view list, const Schema& schema, const char* side) {
    if (trim(list).empty()) throw InvalidInput(std::string("empty ") + side + " side");
    std::vector<std::size_t> pos;
    for (const auto& name : split(list, ',')) pos.push_back(resolve(name, schema));
    return AttributeSet(std::move(pos));
}

// Splits "A,B x C" at the cross-join separator: an 'x' whose two sides
// resolve as attribute lists.
std::pair<std::string, std::string> split_cross(const std::string& body, const Schema& schema) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] != 'x') continue;
        std::string left = trim(std::string_view(body).substr(0, i)), right = trim(std::string_view(body).substr(i + 1));
        if (left.empty() || right.empty() || left.back() == ',' || right.front() == ',') continue;
        try {
            resolve_list(left, schema, "left");
            resolve_list(right, schema, "right");
            return {left, right};
        } catch (const InvalidInput&) {
        }
    }
    throw InvalidInput("spcj needs 'X x Y' with known attributes on both sides");
}

Json ratio_json(const Ratio& r) {
    Json j;
    j["fraction"] = r.str();
    j["reduced"] = r.reduced_str();
    j["decimal"] = decimal_string(r, 12);
    return j;
}

Json row_json(const IncompleteTable& t, std::span<const ValueId> row) {
    Json j = Json::array();
    for (ValueId v : row) {
        if (v == kNull)
            j.push_back(nullptr);
        else
            j.push_back(t.dictionary()->name(v));
    }
    return j;
}

Json world_json(const SpWorld& w) {
    Json j;
    Json rows = Json::array();
    for (std::size_t i = 0; i < w.table.rows(); ++i) rows.push_back(row_json(w.table, w.table.row(i)));
    Json origin = Json::array();
    for (std::size_t o : w.origin) {
        if (o == SpWorld::kSynthetic)
            origin.push_back(nullptr);
        else
            origin.push_back(o);
    }
    j["rows"] = std::move(rows);
    j["origin"] = std::move(origin);
    return j;
}

bool fits_oracle(const IncompleteTable& t, const OracleLimits& lim) {
    return t.rows() <= lim.max_rows && t.arity() <= lim.max_columns &&
           count_spworlds(t, lim.max_worlds + 1) <= lim.max_worlds;
}

void cross_check(const IncompleteTable& t, ConstraintReport& r, const RunOptions& opt) {
    if (!fits_oracle(t, opt.oracle)) {
        r.oracle.note = "instance exceeds the oracle limits";
        return;
    }
    const Constraint& c = r.spec.constraint;
    OracleOptions oo;
    oo.world_budget = opt.oracle.max_worlds;
    r.oracle.performed = true;
    auto disagree = [&](const std::string& what) {
        r.oracle.agrees = false;
        if (!r.oracle.note.empty()) r.oracle.note += "; ";
        r.oracle.note += what;
    };
    try {
        if (r.holds && oracle_check(t, c, oo).holds != *r.holds) disagree("verdict");
        if (c.kind == ConstraintKind::Nmvd || opt.check_only) return;
        if (opt.g3 && r.g3 && !(oracle_g3(t, c, oo).value == *r.g3)) disagree("g3");
        if (opt.g5 && r.precondition) {
            AdditionResult a = oracle_g5(t, c, oo);
            bool same = a.value.has_value() == r.g5.has_value() && (!a.value || *a.value == *r.g5);
            if (!same) disagree("g5");
        }
    } catch (const BudgetExceeded& e) {
        r.oracle.performed = false;
        r.oracle.note = std::string("oracle budget: ") + e.what();
    }
}

template <class Fn>
void measure(ConstraintReport& r, Fn&& fn) {
    try {
        fn();
    } catch (const BudgetExceeded& e) {
        r.status = RunStatus::BudgetExceeded;
        r.budget_reached = e.reached();
        r.error = e.what();
    }
}

ConstraintReport evaluate(const IncompleteTable& t, const ConstraintSpec& spec, const RunOptions& opt) {
    ConstraintReport r;
    r.spec = spec;
    const auto start = std::chrono::steady_clock::now();
    const Constraint& c = spec.constraint;
    const bool measures = !opt.check_only && c.kind != ConstraintKind::Nmvd && !t.empty();
    FdOptions fo{opt.budget};
    TupleGenOptions to{opt.budget};
    try {
        switch (c.kind) {
        case ConstraintKind::SpKey: {
            Verdict v = check_spkey(t, c.lhs);
            r.holds = v.holds;
            r.spworld = std::move(v.world);
            if (!measures) break;
            if (opt.g3) {
                RemovalResult g3 = g3_spkey(t, c.lhs);
                r.g3 = g3.value;
                r.precondition = g3.precondition;
                r.removal_witness = std::move(g3.removed);
                r.removal_world = std::move(g3.world);
            }
            if (opt.g4) {
                try {
                    r.g4 = g4_spkey(t, c.lhs);
                } catch (const UnmaterializedGraph& e) {
                    r.notes.push_back(std::string("g4 unavailable: ") + e.what());
                }
            }
            if (opt.g5) {
                try {
                    AdditionResult g5 = g5_spkey(t, c.lhs);
                    r.g5 = g5.value;
                    r.addition_witness = std::move(g5.added);
                    r.addition_world = std::move(g5.world);
                } catch (const PreconditionViolated& e) {
                    r.precondition = false;
                    r.notes.push_back(e.what());
                }
            }
            break;
        }
        case ConstraintKind::SpFd: {
            Verdict v;
            measure(r, [&] { v = check_spfd(t, c.lhs, c.rhs, fo); });
            if (r.status == RunStatus::BudgetExceeded) break;
            r.holds = v.holds;
            r.spworld = std::move(v.world);
            if (!measures) break;
            if (opt.g3)
                measure(r, [&] {
                    RemovalResult g3 = g3_spfd(t, c.lhs, c.rhs, fo);
                    r.g3 = g3.value;
                    r.precondition = g3.precondition;
                    r.removal_witness = std::move(g3.removed);
                    r.removal_world = std::move(g3.world);
                });
            if (opt.g5)
                measure(r, [&] {
                    AdditionResult g5 = g5_spfd(t, c.lhs, c.rhs, fo);
                    r.precondition = g5.precondition;
                    r.g5 = g5.value;
                    r.addition_witness = std::move(g5.added);
                    r.addition_world = std::move(g5.world);
                });
            break;
        }
        case ConstraintKind::SpMvd:
        case ConstraintKind::SpCj: {
            const bool mvd = c.kind == ConstraintKind::SpMvd;
            Verdict v;
            measure(r, [&] { v = mvd ? check_spmvd(t, c.lhs, c.rhs, to) : check_spcj(t, c.lhs, c.rhs, to); });
            if (r.status == RunStatus::BudgetExceeded) break;
            r.holds = v.holds;
            r.spworld = std::move(v.world);
            if (!measures) break;
            if (opt.g3)
                measure(r, [&] {
                    RemovalResult g3 = mvd ? g3_spmvd(t, c.lhs, c.rhs, to) : g3_spcj(t, c.lhs, c.rhs, to);
                    r.g3 = g3.value;
                    r.removal_witness = std::move(g3.removed);
                    r.removal_world = std::move(g3.world);
                });
            if (opt.g5)
                measure(r, [&] {
                    AdditionResult g5 = mvd ? g5_spmvd(t, c.lhs, c.rhs, to) : g5_spcj(t, c.lhs, c.rhs, to);
                    r.g5 = g5.value;
                    r.addition_witness = std::move(g5.added);
                    r.addition_world = std::move(g5.world);
                });
            break;
        }
        case ConstraintKind::Nmvd:
            r.holds = check_nmvd(t, c.lhs, c.rhs);
            break;
        }
        if (measures && opt.g5 && r.precondition && !r.g5 && r.status != RunStatus::BudgetExceeded)
            r.g5_unreachable = true;
        if (r.status != RunStatus::BudgetExceeded)
            r.status = r.holds.value_or(false) ? RunStatus::Holds : RunStatus::Violated;
        if (opt.verify_with_oracle && r.status != RunStatus::BudgetExceeded) cross_check(t, r, opt);
    } catch (const std::exception& e) {
        r.status = RunStatus::Error;
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

Constraint parse_constraint(std::string_view s, const Schema& schema) {
    std::string text = trim(s);
    auto open = text.find('('), close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open || !trim(text.substr(close + 1)).empty())
        throw InvalidInput("constraint '" + text + "' is not of the form kind(...)");
    const std::string kind = trim(text.substr(0, open));
    const std::string body = trim(text.substr(open + 1, close - open - 1));
    if (body.empty()) throw InvalidInput("constraint '" + text + "' has no attributes");

    auto two_sided = [&](const std::string& sep) {
        auto at = body.find(sep);
        if (at == std::string::npos) throw InvalidInput(kind + " needs the separator '" + sep + "'");
        if (sep == "->" && body.compare(at, 3, "->>") == 0) throw InvalidInput("spfd uses '->', not '->>'");
        return std::make_pair(resolve_list(body.substr(0, at), schema, "left"),
                              resolve_list(body.substr(at + sep.size()), schema, "right"));
    };
    Constraint c;
    if (kind == "spkey") {
        if (body.find("->") != std::string::npos) throw InvalidInput("spkey takes a single attribute list");
        c = Constraint::key(resolve_list(body, schema, "key"));
    } else if (kind == "spfd") {
        auto [x, y] = two_sided("->");
        c = Constraint::fd(x, y);
    } else if (kind == "spmvd") {
        auto [x, y] = two_sided("->>");
        c = Constraint::mvd(x, y);
    } else if (kind == "nmvd") {
        auto [x, y] = two_sided("->>");
        c = Constraint::nmvd(x, y);
    } else if (kind == "spcj") {
        auto [left, right] = split_cross(body, schema);
        c = Constraint::cj(resolve_list(left, schema, "left"), resolve_list(right, schema, "right"));
    } else {
        throw InvalidInput("unknown constraint kind '" + kind + "'");
    }
    validate(c, schema);
    return c;
}

RunReport run(const IncompleteTable& t, const std::vector<ConstraintSpec>& specs, const RunOptions& opt) {
    if (opt.g4 && !opt.check_only)
        for (const auto& s : specs)
            if (s.constraint.kind != ConstraintKind::SpKey)
                throw InvalidInput("g4 is defined for spkey only, not for '" + s.text + "'");
    std::vector<std::future<ConstraintReport>> jobs;
    for (const auto& s : specs) jobs.push_back(std::async(std::launch::async, [&t, &s, &opt] { return evaluate(t, s, opt); }));
    RunReport report;
    for (auto& j : jobs) report.constraints.push_back(j.get());
    return report;
}

int exit_code(const RunReport& r) {
    bool violated = false;
    for (const auto& c : r.constraints) {
        if (c.status == RunStatus::BudgetExceeded) return 3;
        if (c.status != RunStatus::Holds) violated = true;
    }
    return violated ? 1 : 0;
}

std::string status_name(RunStatus s) {
    switch (s) {
    case RunStatus::Holds: return "holds";
    case RunStatus::Violated: return "violated";
    case RunStatus::BudgetExceeded: return "budget_exceeded";
    case RunStatus::Error: return "error";
    }
    return "error";
}

std::string to_json(const RunReport& r, const IncompleteTable& t, const RunOptions& opt, int indent) {
    Json root;
    Json table;
    table["rows"] = t.rows();
    table["columns"] = t.schema().names();
    table["null_token"] = t.null_token();
    root["table"] = std::move(table);
    Json list = Json::array();
    for (const auto& c : r.constraints) {
        Json j;
        j["spec"] = c.spec.text;
        j["canonical"] = to_string(c.spec.constraint, t.schema());
        j["kind"] = kind_name(c.spec.constraint.kind);
        j["status"] = status_name(c.status);
        j["holds"] = c.holds ? Json(*c.holds) : Json(nullptr);
        Json m = Json::object();
        if (c.g3) m["g3"] = ratio_json(*c.g3);
        if (c.g4) m["g4"] = ratio_json(*c.g4);
        if (c.g5)
            m["g5"] = ratio_json(*c.g5);
        else if (c.g5_unreachable || (!opt.check_only && opt.g5 && !c.precondition))
            m["g5"] = "unreachable";
        j["measures"] = std::move(m);
        j["precondition"] = c.precondition;
        Json w;
        w["removal"] = c.removal_witness;
        Json added = Json::array();
        for (const Row& row : c.addition_witness) added.push_back(row_json(t, row));
        w["addition"] = std::move(added);
        w["spworld"] = c.spworld ? world_json(*c.spworld) : Json(nullptr);
        w["removal_world"] = c.removal_world ? world_json(*c.removal_world) : Json(nullptr);
        w["addition_world"] = c.addition_world ? world_json(*c.addition_world) : Json(nullptr);
        j["witnesses"] = std::move(w);
        Json b;
        b["limit"] = opt.budget;
        b["exceeded"] = c.budget_reached.has_value();
        if (c.budget_reached) b["reached"] = *c.budget_reached;
        j["budget"] = std::move(b);
        if (opt.verify_with_oracle) {
            Json o;
            o["performed"] = c.oracle.performed;
            o["agrees"] = c.oracle.performed ? Json(c.oracle.agrees) : Json(nullptr);
            o["note"] = c.oracle.note;
            j["oracle"] = std::move(o);
        }
        if (!c.notes.empty()) j["notes"] = c.notes;
        if (!c.error.empty()) j["error"] = c.error;
        if (opt.timing) j["seconds"] = c.seconds;
        list.push_back(std::move(j));
    }
    root["constraints"] = std::move(list);
    root["exit_code"] = exit_code(r);
    return root.dump(indent) + "\n";
}

std::string to_text(const RunReport& r, const RunOptions& opt) {
    std::ostringstream out;
    for (const auto& c : r.constraints) {
        out << c.spec.text << ": " << status_name(c.status);
        auto show = [&](const char* name, const std::optional<Ratio>& v) {
            if (v) out << "  " << name << "=" << v->str() << " (" << decimal_string(*v, 12) << ")";
        };
        show("g3", c.g3);
        show("g4", c.g4);
        show("g5", c.g5);
        if (!c.g5 && (c.g5_unreachable || (!opt.check_only && opt.g5 && !c.precondition))) out << "  g5=unreachable";
        if (!c.precondition) out << "  [total part violates the constraint]";
        if (opt.verify_with_oracle)
            out << "  oracle=" << (c.oracle.performed ? (c.oracle.agrees ? "agrees" : "DISAGREES") : "skipped");
        if (opt.timing) out << "  " << c.seconds << "s";
        out << '\n';
        if (!c.error.empty()) out << "  error: " << c.error << '\n';
        if (c.oracle.performed && !c.oracle.agrees) out << "  oracle: " << c.oracle.note << '\n';
    }
    return out.str();
}

}  // namespace spc
