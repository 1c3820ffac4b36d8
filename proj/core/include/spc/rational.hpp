#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace spc {

// Exact ratio kept unreduced (count over table size) so reports read "2/4".
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Ratio() = default;
    Ratio(std::int64_t n, std::int64_t d);

    Ratio reduced() const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;          // "2/4"
    std::string reduced_str() const;  // "1/2"

    // Value comparison; 2/4 == 1/2.
    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
        return a.num * b.den <=> b.num * a.den;
    }
    bool identical(const Ratio& o) const { return num == o.num && den == o.den; }
};

Ratio operator-(const Ratio& a, const Ratio& b);
Ratio operator+(const Ratio& a, const Ratio& b);

// Parses "n/d" or a plain integer n (read as n/1), keeping the form as given.
Ratio parse_ratio(std::string_view s);

// Decimal rendering with the given number of significant digits.
std::string decimal_string(const Ratio& r, int significant = 12);

}  // namespace spc
