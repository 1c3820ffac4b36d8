#include "spc/rational.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>

#include "spc/errors.hpp"

namespace spc {

Ratio::Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0) throw InvalidInput("ratio denominator must be positive");
}

Ratio Ratio::reduced() const {
    std::int64_t g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

std::string Ratio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::string Ratio::reduced_str() const { return reduced().str(); }

Ratio operator-(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.den - b.num * a.den, a.den * b.den).reduced();
}

Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.den + b.num * a.den, a.den * b.den).reduced();
}

Ratio parse_ratio(std::string_view s) {
    auto parse_int = [&](std::string_view part) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
            throw InvalidInput("malformed ratio '" + std::string(s) + "'");
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Ratio(parse_int(s), 1);
    return Ratio(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::string decimal_string(const Ratio& r, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, r.to_double());
    return buf;
}

}  // namespace spc
