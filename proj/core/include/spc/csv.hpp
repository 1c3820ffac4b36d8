#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spc/table.hpp"

namespace spc {

struct CsvOptions {
    std::string null_token;  // unquoted cells equal to it become NULL
    bool has_header = true;  // otherwise attributes are named A1..An
};

// RFC 4180 records: comma separated, double-quote quoting with "" as an
// escaped quote, LF or CRLF line ends. Quoted cells are always values.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text,
                                                        std::vector<std::vector<bool>>* quoted = nullptr);

// Throws InvalidInput on an empty input, a ragged record (naming its line),
// or duplicate header names.
IncompleteTable parse_csv_text(std::string_view text, const CsvOptions& opt = {});
IncompleteTable load_csv(const std::string& path, const CsvOptions& opt = {});

// Header plus one record per row; NULL cells are written as the table's null
// token and values that would read back as NULL or need escaping are quoted.
void write_csv(std::ostream& out, const IncompleteTable& t);
void save_csv(const std::string& path, const IncompleteTable& t);

}  // namespace spc
