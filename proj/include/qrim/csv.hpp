// csv.hpp: Deterministic CSV output
//
// Floats use the shortest representation that round-trips (std::to_chars), which
// never needs more than 17 significant digits. Metadata lines start with '#'.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace qrim::csv {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf.data(), res.ptr);
}

// Wraps text containing a separator, quote or newline in double quotes.
inline std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// One CSV cell: numbers are formatted on construction.
class Cell {
public:
    Cell(double v) : text_(format_double(v)) {}
    Cell(std::size_t v) : text_(std::to_string(v)) {}
    Cell(int v) : text_(std::to_string(v)) {}
    Cell(bool v) : text_(v ? "1" : "0") {}
    Cell(std::string_view s) : text_(s) {}
    Cell(const char* s) : text_(s) {}
    Cell(std::string s) : text_(std::move(s)) {}

    const std::string& text() const { return text_; }

private:
    std::string text_;
};

inline void write_row(std::ostream& os, std::initializer_list<Cell> cells) {
    bool first = true;
    for (const Cell& c : cells) {
        if (!first) os << ',';
        os << c.text();
        first = false;
    }
    os << '\n';
}

inline void write_row(std::ostream& os, const std::vector<Cell>& cells) {
    bool first = true;
    for (const Cell& c : cells) {
        if (!first) os << ',';
        os << c.text();
        first = false;
    }
    os << '\n';
}

inline void write_header(std::ostream& os, std::initializer_list<std::string_view> names) {
    bool first = true;
    for (std::string_view n : names) {
        if (!first) os << ',';
        os << n;
        first = false;
    }
    os << '\n';
}

inline void write_meta(std::ostream& os, std::string_view key, std::string_view value) {
    os << "# " << key << '=' << value << '\n';
}

}  // namespace qrim::csv
