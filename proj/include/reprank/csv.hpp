#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace reprank {

// 15-significant-digit rendering, stable across runs.
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

// NaN and missing optionals render as NA.
inline std::string format_cell(double x) {
    return std::isnan(x) ? "NA" : format_number(x);
}

inline std::string format_cell(const std::optional<double>& x) {
    return x ? format_number(*x) : "NA";
}

} // namespace reprank
