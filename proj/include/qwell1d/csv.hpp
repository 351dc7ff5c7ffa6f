#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace qwell1d::csv {

// Fixed float formatting for byte-identical output across runs: 10 significant
// digits, scientific, '.' decimal, locale-independent (std::to_chars), '\n'
// line endings.
inline std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // collapse -0.0
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::scientific, 9);
    return std::string(buf, ptr);
}

inline void write_row(std::ostream& os, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << format_value(row[i]);
    }
    os << '\n';
}

inline void write_header(std::ostream& os, const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) os << ',';
        os << cols[i];
    }
    os << '\n';
}

}  // namespace qwell1d::csv
