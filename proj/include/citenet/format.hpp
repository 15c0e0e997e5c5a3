#pragma once

#include <cstdio>
#include <optional>
#include <string>

namespace citenet {

/// Shortest round-trippable-ish decimal rendering used for all CSV
/// output; fixed precision keeps repeated runs byte-identical.
inline std::string format_double(double v, int precision = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

inline std::string format_optional(const std::optional<double>& v, int precision = 10) {
    return v ? format_double(*v, precision) : std::string();
}

}  // namespace citenet
