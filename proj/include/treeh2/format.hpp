#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace treeh2 {

/// Format a double with 12 significant digits (the fixed precision used by
/// every artifact this library writes). Locale-independent.
inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Round a double to 12 significant digits so that JSON serialization of the
/// value prints the same digits fmt12 would.
inline double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

} // namespace treeh2
