#include "spc/csv.hpp"

#include <fstream>
#include <sstream>

#include "spc/errors.hpp"

namespace spc {

namespace {

// Physical line number at which each record starts, for error messages.
struct Records {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::vector<bool>> quoted;
    std::vector<std::size_t> line;
};

Records read_records(std::string_view text) {
    Records rec;
    std::vector<std::string> row;
    std::vector<bool> row_quoted;
    std::string field;
    bool field_quoted = false, in_quotes = false, at_field_start = true;
    std::size_t line = 1, record_line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        row_quoted.push_back(field_quoted);
        field.clear();
        field_quoted = false;
        at_field_start = true;
    };
    auto end_record = [&] {
        end_field();
        rec.cells.push_back(std::move(row));
        rec.quoted.push_back(std::move(row_quoted));
        rec.line.push_back(record_line);
        row.clear();
        row_quoted.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field += ch;
            }
            continue;
        }
        if (ch == '"' && at_field_start) {
            in_quotes = true;
            field_quoted = true;
            at_field_start = false;
        } else if (ch == ',') {
            end_field();
        } else if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            continue;
        } else if (ch == '\n') {
            end_record();
            record_line = ++line;
        } else {
            if (field_quoted) throw InvalidInput("line " + std::to_string(line) + ": text after a closing quote");
            field += ch;
            at_field_start = false;
        }
    }
    if (in_quotes) throw InvalidInput("line " + std::to_string(record_line) + ": unterminated quoted field");
    // A final line without a newline still forms a record.
    if (!row.empty() || !field.empty() || field_quoted) end_record();
    return rec;
}

bool needs_quotes(const std::string& s) { return s.find_first_of(",\"\r\n") != std::string::npos; }

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text, std::vector<std::vector<bool>>* quoted) {
    Records rec = read_records(text);
    if (quoted) *quoted = std::move(rec.quoted);
    return std::move(rec.cells);
}

IncompleteTable parse_csv_text(std::string_view text, const CsvOptions& opt) {
    Records rec = read_records(text);
    if (rec.cells.empty()) throw InvalidInput("empty CSV input");
    std::vector<std::string> names;
    std::size_t first = 0;
    const std::size_t arity = rec.cells[0].size();
    if (opt.has_header) {
        names = rec.cells[0];
        first = 1;
    } else {
        for (std::size_t a = 1; a <= arity; ++a) names.push_back("A" + std::to_string(a));
    }
    IncompleteTable t(Schema(names), nullptr, opt.null_token);
    Row r(arity);
    for (std::size_t i = first; i < rec.cells.size(); ++i) {
        const auto& cells = rec.cells[i];
        if (cells.size() != arity)
            throw InvalidInput("ragged row at line " + std::to_string(rec.line[i]) + ": " + std::to_string(cells.size()) +
                               " cells, expected " + std::to_string(arity));
        for (std::size_t a = 0; a < arity; ++a)
            r[a] = !rec.quoted[i][a] && cells[a] == opt.null_token ? kNull : t.value(cells[a]);
        t.add_row(r);
    }
    return t;
}

IncompleteTable load_csv(const std::string& path, const CsvOptions& opt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str(), opt);
}

void write_csv(std::ostream& out, const IncompleteTable& t) {
    auto cell = [&](const std::string& s) { return needs_quotes(s) || s == t.null_token() ? quote(s) : s; };
    for (std::size_t a = 0; a < t.arity(); ++a) out << (a ? "," : "") << (needs_quotes(t.schema().name(a)) ? quote(t.schema().name(a)) : t.schema().name(a));
    out << '\n';
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t a = 0; a < t.arity(); ++a) {
            if (a) out << ',';
            out << (t.at(i, a) == kNull ? t.null_token() : cell(t.cell_name(i, a)));
        }
        out << '\n';
    }
}

void save_csv(const std::string& path, const IncompleteTable& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    write_csv(out, t);
}

}  // namespace spc
